#include "oma/walker.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oma/rng.hpp"

namespace oma {

void WalkCorpus::add_walk(Walk w) {
    for (const std::string& tok : w.tokens) {
        auto [it, inserted] = vocab_index.emplace(tok, vocab.size());
        if (inserted) {
            vocab.push_back(tok);
            counts.push_back(0);
        }
        ++counts[it->second];
    }
    walks.push_back(std::move(w));
}

WalkCorpus generate_walks(const Graph& g, std::size_t walks_per_node,
                          std::size_t depth, std::uint64_t seed) {
    if (g.node_count() == 0) throw std::invalid_argument("empty graph");
    if (walks_per_node == 0 || depth == 0)
        throw std::invalid_argument("walks_per_node and depth must be >= 1");

    WalkCorpus corpus;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        Rng rng(mix_seed(seed, g.nodes()[v]));
        for (std::size_t w = 0; w < walks_per_node; ++w) {
            Walk walk;
            walk.tokens.push_back(g.nodes()[v]);
            std::size_t current = v;
            for (std::size_t hop = 0; hop < depth; ++hop) {
                const auto& out = g.outgoing(current);
                if (out.empty()) break;
                const Triple& t = g.triples()[out[rng.index(out.size())]];
                walk.tokens.push_back(t.predicate);
                walk.tokens.push_back(t.object);
                current = g.node_index(t.object);
            }
            corpus.add_walk(std::move(walk));
        }
    }
    return corpus;
}

void dump_corpus(const WalkCorpus& corpus, std::ostream& out) {
    for (const Walk& w : corpus.walks) {
        for (std::size_t i = 0; i < w.tokens.size(); ++i) {
            if (i) out << ' ';
            out << w.tokens[i];
        }
        out << '\n';
    }
}

WalkCorpus load_corpus(std::istream& in) {
    WalkCorpus corpus;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Walk w;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) w.tokens.push_back(std::move(tok));
        corpus.add_walk(std::move(w));
    }
    return corpus;
}

}  // namespace oma
