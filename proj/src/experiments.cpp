#include "oma/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "oma/graph.hpp"
#include "oma/matcher.hpp"
#include "oma/orientation.hpp"
#include "oma/rng.hpp"
#include "oma/walker.hpp"

namespace oma {

EvalReport evaluate(const Alignment& predicted, const Alignment& reference) {
    std::unordered_set<std::string> ref_pairs;
    for (const Correspondence& c : reference.correspondences)
        ref_pairs.insert(c.source + '\t' + c.target);

    EvalReport report;
    report.predicted = predicted.size();
    report.reference = reference.size();
    for (const Correspondence& c : predicted.correspondences)
        if (ref_pairs.count(c.source + '\t' + c.target))
            ++report.true_positives;

    if (report.predicted)
        report.precision =
            static_cast<double>(report.true_positives) / report.predicted;
    if (report.reference)
        report.recall =
            static_cast<double>(report.true_positives) / report.reference;
    if (report.precision + report.recall > 0.0)
        report.f1 = 2.0 * report.precision * report.recall /
                    (report.precision + report.recall);
    return report;
}

ExperimentConfig load_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
        while (!line.empty() && is_space(line.back())) line.pop_back();
        std::size_t b = 0;
        while (b < line.size() && is_space(line[b])) ++b;
        line.erase(0, b);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && is_space(key.back())) key.pop_back();
        std::size_t v = 0;
        while (v < value.size() && is_space(value[v])) ++v;
        value.erase(0, v);

        auto as_list = [&] {
            std::vector<double> out;
            std::istringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
            return out;
        };

        try {
            if (key == "nodes") cfg.nodes = std::stoull(value);
            else if (key == "lambda") cfg.lambda = std::stod(value);
            else if (key == "dimension") cfg.dimension = std::stoull(value);
            else if (key == "window") cfg.window = std::stoull(value);
            else if (key == "depth") cfg.depth = std::stoull(value);
            else if (key == "walks") cfg.walks = std::stoull(value);
            else if (key == "epochs") cfg.epochs = std::stoull(value);
            else if (key == "negatives") cfg.negatives = std::stoull(value);
            else if (key == "learning_rate") cfg.learning_rate = std::stod(value);
            else if (key == "alpha") cfg.alpha = std::stod(value);
            else if (key == "repetitions") cfg.repetitions = std::stoull(value);
            else if (key == "master_seed") cfg.master_seed = std::stoull(value);
            else if (key == "alphas") cfg.alphas = as_list();
            else if (key == "sweep_values") cfg.sweep_values = as_list();
            else
                throw std::runtime_error("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": bad value for '" + key + "'");
        }
    }
    return cfg;
}

namespace {

TrainingConfig embed_config(const ExperimentConfig& cfg, std::uint64_t seed) {
    TrainingConfig tc;
    tc.dimension = cfg.dimension;
    tc.window = cfg.window;
    tc.epochs = cfg.epochs;
    tc.negatives = cfg.negatives;
    tc.learning_rate = cfg.learning_rate;
    tc.min_count = 1;
    tc.seed = seed;
    return tc;
}

EmbeddingSpace embed_graph(const Graph& g, const ExperimentConfig& cfg,
                           std::uint64_t walk_seed, std::uint64_t train_seed) {
    WalkCorpus corpus = generate_walks(g, cfg.walks, cfg.depth, walk_seed);
    return train(corpus, embed_config(cfg, train_seed));
}

Alignment restrict_to_sources(const Alignment& predicted,
                              const Alignment& reference) {
    std::unordered_set<NodeId> sources;
    for (const Correspondence& c : reference.correspondences)
        sources.insert(c.source);
    Alignment out;
    for (const Correspondence& c : predicted.correspondences)
        if (sources.count(c.source)) out.add(c);
    return out;
}

// split, fit the rotation from (possibly distorted) anchors, match, and
// score against the clean train/test references
SweepRow run_trial(const EmbeddingSpace& src_emb, const EmbeddingSpace& tgt_emb,
                   const Alignment& reference, const Graph& target_graph,
                   double alpha, double noise, std::uint64_t trial_seed) {
    auto [train_ref, test_ref] =
        split_alignment(reference, alpha, mix_seed(trial_seed, "split"));

    Alignment anchors_src = train_ref;
    if (noise > 0.0)
        anchors_src = inject_noise(train_ref, noise, target_graph.nodes(),
                                   mix_seed(trial_seed, "noise"));

    AnchorBuildResult anchors =
        build_anchor_set(anchors_src, src_emb, tgt_emb);
    RotationModel model = compute_rotation(anchors.anchors);
    EmbeddingSpace src_rot = apply_rotation(model, src_emb, Side::Source);
    EmbeddingSpace tgt_rot = apply_rotation(model, tgt_emb, Side::Target);

    std::vector<NodeId> src_candidates;
    for (const Correspondence& c : reference.correspondences)
        src_candidates.push_back(c.source);
    Alignment predicted = match_nearest(src_rot, tgt_rot, src_candidates,
                                        target_graph.nodes());

    SweepRow row;
    row.train_precision =
        evaluate(restrict_to_sources(predicted, train_ref), train_ref)
            .precision;
    row.test_precision =
        evaluate(restrict_to_sources(predicted, test_ref), test_ref).precision;
    return row;
}

}  // namespace

SweepResult run_duplicate_experiment(const ExperimentConfig& cfg) {
    const std::uint64_t seed = cfg.master_seed;
    Graph g = generate_synthetic_graph(cfg.nodes, cfg.lambda,
                                       mix_seed(seed, "graph"));
    auto [copy, reference] = duplicate_graph(g, "_c");

    EmbeddingSpace src_emb = embed_graph(g, cfg, mix_seed(seed, "walks_src"),
                                         mix_seed(seed, "embed_src"));
    EmbeddingSpace tgt_emb = embed_graph(copy, cfg, mix_seed(seed, "walks_tgt"),
                                         mix_seed(seed, "embed_tgt"));

    SweepResult result;
    result.control_name = "alpha";
    for (double alpha : cfg.alphas) {
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
            SweepRow row = run_trial(src_emb, tgt_emb, reference, copy, alpha,
                                     0.0, mix_seed(seed, rep));
            row.control = alpha;
            row.repetition = rep;
            result.rows.push_back(row);
        }
    }
    return result;
}

SweepResult run_noise_sweep(const ExperimentConfig& cfg) {
    const std::uint64_t seed = cfg.master_seed;
    Graph g = generate_synthetic_graph(cfg.nodes, cfg.lambda,
                                       mix_seed(seed, "graph"));
    auto [copy, reference] = duplicate_graph(g, "_c");

    EmbeddingSpace src_emb = embed_graph(g, cfg, mix_seed(seed, "walks_src"),
                                         mix_seed(seed, "embed_src"));
    EmbeddingSpace tgt_emb = embed_graph(copy, cfg, mix_seed(seed, "walks_tgt"),
                                         mix_seed(seed, "embed_tgt"));

    SweepResult result;
    result.control_name = "noise";
    for (double noise : cfg.sweep_values) {
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
            SweepRow row = run_trial(src_emb, tgt_emb, reference, copy,
                                     cfg.alpha, noise, mix_seed(seed, rep));
            row.control = noise;
            row.repetition = rep;
            result.rows.push_back(row);
        }
    }
    return result;
}

SweepResult run_heterogeneity_sweep(const ExperimentConfig& cfg) {
    const std::uint64_t seed = cfg.master_seed;
    Graph g = generate_synthetic_graph(cfg.nodes, cfg.lambda,
                                       mix_seed(seed, "graph"));
    auto [copy, reference] = duplicate_graph(g, "_c");

    EmbeddingSpace src_emb = embed_graph(g, cfg, mix_seed(seed, "walks_src"),
                                         mix_seed(seed, "embed_src"));

    SweepResult result;
    result.control_name = "removed_fraction";
    for (std::size_t fi = 0; fi < cfg.sweep_values.size(); ++fi) {
        double fraction = cfg.sweep_values[fi];
        std::uint64_t fseed = mix_seed(mix_seed(seed, "remove"), fi);
        Graph reduced = remove_triples(copy, fraction, fseed);
        EmbeddingSpace tgt_emb =
            embed_graph(reduced, cfg, mix_seed(fseed, "walks_tgt"),
                        mix_seed(fseed, "embed_tgt"));
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
            SweepRow row = run_trial(src_emb, tgt_emb, reference, reduced,
                                     cfg.alpha, 0.0, mix_seed(seed, rep));
            row.control = fraction;
            row.repetition = rep;
            result.rows.push_back(row);
        }
    }
    return result;
}

void emit_report(const SweepResult& result, std::ostream& csv,
                 std::ostream* summary) {
    if (result.rows.empty()) throw std::invalid_argument("empty sweep result");

    csv << "control,repetition,train_precision,test_precision\n";
    csv.precision(10);
    for (const SweepRow& row : result.rows)
        csv << row.control << ',' << row.repetition << ','
            << row.train_precision << ',' << row.test_precision << '\n';

    if (!summary) return;
    std::vector<double> values;
    for (const SweepRow& row : result.rows)
        if (values.empty() || values.back() != row.control)
            values.push_back(row.control);

    auto mean_std = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= xs.size();
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        if (xs.size() > 1) var /= xs.size() - 1;
        return std::pair{mean, std::sqrt(var)};
    };

    *summary << result.control_name
             << "\tn\ttrain_mean\ttrain_std\ttest_mean\ttest_std\n";
    summary->precision(6);
    for (double v : values) {
        std::vector<double> tr, te;
        for (const SweepRow& row : result.rows) {
            if (row.control != v) continue;
            tr.push_back(row.train_precision);
            te.push_back(row.test_precision);
        }
        auto [tm, ts] = mean_std(tr);
        auto [em, es] = mean_std(te);
        *summary << v << '\t' << tr.size() << '\t' << tm << '\t' << ts << '\t'
                 << em << '\t' << es << '\n';
    }
}

}  // namespace oma
