#include "oma/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oma/rng.hpp"

namespace oma {

void save_alignment(const Alignment& a, std::ostream& out) {
    out << "source\ttarget\trelation\tconfidence\n";
    out.precision(17);
    for (const Correspondence& c : a.correspondences)
        out << c.source << '\t' << c.target << '\t' << c.relation << '\t'
            << c.confidence << '\n';
}

Alignment load_alignment(std::istream& in) {
    Alignment a;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (first) {
            first = false;
            if (!fields.empty() && fields[0] == "source") continue;
        }
        if (fields.size() < 3 || fields.size() > 4)
            throw std::runtime_error("alignment line " +
                                     std::to_string(lineno) +
                                     ": expected 3 or 4 fields");
        Correspondence c;
        c.source = fields[0];
        c.target = fields[1];
        c.relation = fields[2];
        c.confidence = fields.size() == 4 ? std::stod(fields[3]) : 1.0;
        a.add(std::move(c));
    }
    return a;
}

std::pair<Alignment, Alignment> split_alignment(const Alignment& a,
                                                double alpha,
                                                std::uint64_t seed) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("alpha must be in (0,1)");
    if (a.size() < 2)
        throw std::invalid_argument("alignment needs at least 2 entries");

    const std::size_t n = a.size();
    const std::size_t n_train = static_cast<std::size_t>(alpha * n);
    if (n_train == 0)
        throw std::invalid_argument("alpha yields an empty train split");

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Rng rng(seed);
    std::vector<bool> in_train(n, false);
    for (std::size_t i = 0; i < n_train; ++i) {
        std::size_t j = i + rng.index(n - i);
        std::swap(idx[i], idx[j]);
        in_train[idx[i]] = true;
    }

    Alignment train, test;
    for (std::size_t i = 0; i < n; ++i)
        (in_train[i] ? train : test).add(a.correspondences[i]);
    return {std::move(train), std::move(test)};
}

Alignment inject_noise(const Alignment& train, double noise_rate,
                       const std::vector<NodeId>& target_pool,
                       std::uint64_t seed) {
    if (noise_rate < 0.0 || noise_rate > 1.0)
        throw std::invalid_argument("noise_rate must be in [0,1]");
    if (target_pool.size() < 2)
        throw std::invalid_argument("target pool needs at least 2 nodes");

    const std::size_t n = train.size();
    const std::size_t n_distort = static_cast<std::size_t>(noise_rate * n);

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Rng rng(seed);
    std::vector<bool> distort(n, false);
    for (std::size_t i = 0; i < n_distort; ++i) {
        std::size_t j = i + rng.index(n - i);
        std::swap(idx[i], idx[j]);
        distort[idx[i]] = true;
    }

    Alignment out = train;
    for (std::size_t i = 0; i < n; ++i) {
        if (!distort[i]) continue;
        Correspondence& c = out.correspondences[i];
        NodeId wrong;
        do {
            wrong = target_pool[rng.index(target_pool.size())];
        } while (wrong == c.target);
        c.target = wrong;
    }
    return out;
}

AnchorBuildResult build_anchor_set(const Alignment& train,
                                   const EmbeddingSpace& src,
                                   const EmbeddingSpace& tgt) {
    AnchorBuildResult result;
    for (const Correspondence& c : train.correspondences) {
        if (!src.contains(c.source)) {
            result.skipped.push_back(c.source);
            continue;
        }
        if (!tgt.contains(c.target)) {
            result.skipped.push_back(c.target);
            continue;
        }
        result.anchors.add(src.vector(c.source), tgt.vector(c.target));
    }
    if (result.anchors.size() == 0)
        throw std::runtime_error("no usable anchors");
    return result;
}

Alignment match_nearest(const EmbeddingSpace& src, const EmbeddingSpace& tgt,
                        const std::vector<NodeId>& candidates_src,
                        const std::vector<NodeId>& candidates_tgt,
                        std::size_t* skipped) {
    if (src.dimension() != tgt.dimension())
        throw std::invalid_argument("space dimension mismatch");
    if (candidates_src.empty() || candidates_tgt.empty())
        throw std::invalid_argument("empty candidate set");

    std::size_t skip_count = 0;

    std::vector<NodeId> sources = candidates_src;
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

    std::vector<NodeId> targets;
    targets.reserve(candidates_tgt.size());
    for (const NodeId& id : candidates_tgt) {
        if (tgt.contains(id))
            targets.push_back(id);
        else
            ++skip_count;
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    const std::size_t d = src.dimension();
    Alignment out;
    if (!targets.empty()) {
        for (const NodeId& s : sources) {
            if (!src.contains(s)) {
                ++skip_count;
                continue;
            }
            auto sv = src.vector(s);
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_idx = 0;
            for (std::size_t t = 0; t < targets.size(); ++t) {
                auto tv = tgt.vector(targets[t]);
                double dist2 = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    double diff = sv[i] - tv[i];
                    dist2 += diff * diff;
                }
                // strict < keeps the lexicographically smallest tie
                if (dist2 < best) {
                    best = dist2;
                    best_idx = t;
                }
            }
            out.add({s, targets[best_idx], "=",
                     1.0 / (1.0 + std::sqrt(best))});
        }
    }
    if (skipped) *skipped = skip_count;
    return out;
}

}  // namespace oma
