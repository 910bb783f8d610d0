#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oma/alignment.hpp"

namespace oma {

struct EvalReport {
    std::size_t true_positives = 0;
    std::size_t predicted = 0;
    std::size_t reference = 0;
    double precision = 0.0;  // tp / predicted, 0 when predicted == 0
    double recall = 0.0;     // tp / reference, 0 when reference == 0
    double f1 = 0.0;         // 2PR/(P+R), 0 when P+R == 0
};

// micro scores over (source, target) pairs; relation and confidence ignored
EvalReport evaluate(const Alignment& predicted, const Alignment& reference);

struct SweepRow {
    double control = 0.0;
    std::size_t repetition = 0;
    double train_precision = 0.0;
    double test_precision = 0.0;
};

struct SweepResult {
    std::string control_name;
    std::vector<SweepRow> rows;
};

struct ExperimentConfig {
    std::size_t nodes = 500;
    double lambda = 4.0;
    std::size_t dimension = 64;
    std::size_t window = 6;
    std::size_t depth = 4;
    std::size_t walks = 50;
    std::size_t epochs = 5;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
    double alpha = 0.2;  // anchor fraction for the noise/heterogeneity sweeps
    std::size_t repetitions = 3;
    std::uint64_t master_seed = 42;
    std::vector<double> alphas = {0.2, 0.4, 0.6, 0.8};
    std::vector<double> sweep_values = {0.0, 0.1, 0.2, 0.3, 0.4,
                                        0.5, 0.6, 0.7, 0.8, 0.9};
};

// flat key=value text, '#' comments
ExperimentConfig load_experiment_config(std::istream& in);

// Duplicate-graph task: embed G and its copy independently, then for each
// alpha and repetition split/rotate/match and record train/test precision.
SweepResult run_duplicate_experiment(const ExperimentConfig& cfg);

// alpha fixed at cfg.alpha, sweeping the anchor-noise rate
SweepResult run_noise_sweep(const ExperimentConfig& cfg);

// alpha fixed, sweeping the fraction of triples removed from the copy
SweepResult run_heterogeneity_sweep(const ExperimentConfig& cfg);

// CSV (header + one row per sweep row) to csv; optional per-control-value
// mean/stddev summary block to summary.
void emit_report(const SweepResult& result, std::ostream& csv,
                 std::ostream* summary = nullptr);

}  // namespace oma
