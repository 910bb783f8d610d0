#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "oma/walker.hpp"

namespace oma {

struct TrainingConfig {
    std::size_t dimension = 100;
    std::size_t window = 6;
    std::size_t epochs = 5;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
    std::uint64_t min_count = 1;
    std::uint64_t seed = 1;

    void validate() const;
};

// Token vectors of a fixed dimension, dense row-major storage.
class EmbeddingSpace {
public:
    EmbeddingSpace() = default;
    explicit EmbeddingSpace(std::size_t dimension) : dimension_(dimension) {}

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    bool contains(const std::string& token) const {
        return index_.count(token) > 0;
    }
    std::span<const double> vector(const std::string& token) const;
    std::span<double> mutable_vector(const std::string& token);

    void add(const std::string& token, std::span<const double> values);

    // text format: "count dimension", then one token + d floats per line
    void save(std::ostream& out) const;
    static EmbeddingSpace load(std::istream& in);

private:
    std::size_t dimension_ = 0;
    std::vector<std::string> tokens_;
    std::vector<double> data_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct TrainStats {
    std::vector<double> epoch_loss;  // mean per-pair loss, one entry per epoch
    std::uint64_t pairs_per_epoch = 0;
};

// Skip-gram with negative sampling over the walk corpus. Single-threaded
// and fully deterministic under cfg.seed. Returns input-side vectors for
// every token with corpus count >= cfg.min_count.
EmbeddingSpace train(const WalkCorpus& corpus, const TrainingConfig& cfg,
                     TrainStats* stats = nullptr);

// -log sigmoid(c.x) - sum_i log sigmoid(-c.n_i)
double sgns_pair_loss(std::span<const double> center,
                      std::span<const double> context,
                      const std::vector<std::vector<double>>& negatives);

struct SgnsGradients {
    std::vector<double> center;
    std::vector<double> context;
    std::vector<std::vector<double>> negatives;
};

// analytic gradients of sgns_pair_loss with respect to every input vector
SgnsGradients sgns_pair_gradients(
    std::span<const double> center, std::span<const double> context,
    const std::vector<std::vector<double>>& negatives);

}  // namespace oma
