#include "oma/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oma/rng.hpp"

namespace oma {

void TrainingConfig::validate() const {
    if (dimension == 0) throw std::invalid_argument("dimension must be >= 1");
    if (window == 0) throw std::invalid_argument("window must be >= 1");
    if (epochs == 0) throw std::invalid_argument("epochs must be >= 1");
    if (negatives == 0) throw std::invalid_argument("negatives must be >= 1");
    if (learning_rate <= 0.0)
        throw std::invalid_argument("learning rate must be > 0");
}

std::span<const double> EmbeddingSpace::vector(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end())
        throw std::invalid_argument("no vector for token: " + token);
    return {data_.data() + it->second * dimension_, dimension_};
}

std::span<double> EmbeddingSpace::mutable_vector(const std::string& token) {
    auto it = index_.find(token);
    if (it == index_.end())
        throw std::invalid_argument("no vector for token: " + token);
    return {data_.data() + it->second * dimension_, dimension_};
}

void EmbeddingSpace::add(const std::string& token,
                         std::span<const double> values) {
    if (values.size() != dimension_)
        throw std::invalid_argument("dimension mismatch");
    if (!index_.emplace(token, tokens_.size()).second)
        throw std::invalid_argument("duplicate token: " + token);
    tokens_.push_back(token);
    data_.insert(data_.end(), values.begin(), values.end());
}

void EmbeddingSpace::save(std::ostream& out) const {
    out << size() << ' ' << dimension_ << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        out << tokens_[i];
        for (std::size_t j = 0; j < dimension_; ++j)
            out << ' ' << data_[i * dimension_ + j];
        out << '\n';
    }
}

EmbeddingSpace EmbeddingSpace::load(std::istream& in) {
    std::size_t count = 0, dim = 0;
    if (!(in >> count >> dim))
        throw std::runtime_error("bad embedding header");
    EmbeddingSpace space(dim);
    std::vector<double> buf(dim);
    for (std::size_t i = 0; i < count; ++i) {
        std::string token;
        if (!(in >> token)) throw std::runtime_error("truncated embedding file");
        for (std::size_t j = 0; j < dim; ++j)
            if (!(in >> buf[j]))
                throw std::runtime_error("truncated embedding file");
        space.add(token, buf);
    }
    return space;
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// numerically stable -log sigmoid(x) = log(1 + exp(-x))
inline double log1p_exp_neg(double x) {
    if (x > 0) return std::log1p(std::exp(-x));
    return -x + std::log1p(std::exp(x));
}

// cumulative unigram^0.75 table for negative sampling, binary searched
struct NegativeSampler {
    std::vector<double> cumulative;

    explicit NegativeSampler(const std::vector<std::uint64_t>& counts) {
        cumulative.resize(counts.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            acc += std::pow(static_cast<double>(counts[i]), 0.75);
            cumulative[i] = acc;
        }
    }

    std::size_t draw(Rng& rng) const {
        double r = rng.real() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        if (it == cumulative.end()) --it;
        return static_cast<std::size_t>(it - cumulative.begin());
    }
};

}  // namespace

double sgns_pair_loss(std::span<const double> center,
                      std::span<const double> context,
                      const std::vector<std::vector<double>>& negatives) {
    if (center.size() != context.size())
        throw std::invalid_argument("dimension mismatch");
    double loss = log1p_exp_neg(dot(center, context));
    for (const auto& neg : negatives) {
        if (neg.size() != center.size())
            throw std::invalid_argument("dimension mismatch");
        loss += log1p_exp_neg(-dot(center, neg));
    }
    return loss;
}

SgnsGradients sgns_pair_gradients(
    std::span<const double> center, std::span<const double> context,
    const std::vector<std::vector<double>>& negatives) {
    if (center.size() != context.size())
        throw std::invalid_argument("dimension mismatch");
    const std::size_t d = center.size();
    SgnsGradients g;
    g.center.assign(d, 0.0);
    g.context.assign(d, 0.0);

    double sp = sigmoid(dot(center, context));
    for (std::size_t i = 0; i < d; ++i) {
        g.center[i] += (sp - 1.0) * context[i];
        g.context[i] = (sp - 1.0) * center[i];
    }
    for (const auto& neg : negatives) {
        if (neg.size() != d) throw std::invalid_argument("dimension mismatch");
        double sn = sigmoid(dot(center, neg));
        std::vector<double> gn(d);
        for (std::size_t i = 0; i < d; ++i) {
            g.center[i] += sn * neg[i];
            gn[i] = sn * center[i];
        }
        g.negatives.push_back(std::move(gn));
    }
    return g;
}

EmbeddingSpace train(const WalkCorpus& corpus, const TrainingConfig& cfg,
                     TrainStats* stats) {
    cfg.validate();
    if (corpus.empty()) throw std::invalid_argument("empty corpus");

    // vocabulary above the frequency floor, corpus first-encounter order
    std::vector<std::size_t> kept;  // corpus vocab index -> retained
    std::vector<std::int64_t> remap(corpus.vocab.size(), -1);
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < corpus.vocab.size(); ++i) {
        if (corpus.counts[i] >= cfg.min_count) {
            remap[i] = static_cast<std::int64_t>(kept.size());
            kept.push_back(i);
            counts.push_back(corpus.counts[i]);
        }
    }
    const std::size_t vocab_size = kept.size();
    if (vocab_size == 0)
        throw std::invalid_argument("empty vocabulary after frequency floor");

    // walks as retained-token id sequences
    std::vector<std::vector<std::uint32_t>> sentences;
    sentences.reserve(corpus.walks.size());
    std::uint64_t pairs_per_epoch = 0;
    for (const Walk& w : corpus.walks) {
        std::vector<std::uint32_t> ids;
        ids.reserve(w.tokens.size());
        for (const std::string& tok : w.tokens) {
            std::int64_t id = remap[corpus.vocab_index.at(tok)];
            if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
        }
        for (std::size_t c = 0; c < ids.size(); ++c) {
            std::size_t lo = c > cfg.window ? c - cfg.window : 0;
            std::size_t hi = std::min(ids.size(), c + cfg.window + 1);
            pairs_per_epoch += hi - lo - 1;
        }
        sentences.push_back(std::move(ids));
    }

    const std::size_t d = cfg.dimension;
    Rng rng(cfg.seed);
    std::vector<double> syn0(vocab_size * d);  // input vectors
    std::vector<double> syn1(vocab_size * d, 0.0);  // context vectors
    for (double& x : syn0) x = rng.real(-0.5 / d, 0.5 / d);

    NegativeSampler sampler(counts);
    const double lr_floor = cfg.learning_rate * 1e-4;
    const std::uint64_t total_pairs = pairs_per_epoch * cfg.epochs;
    std::uint64_t processed = 0;

    if (stats) {
        stats->epoch_loss.clear();
        stats->pairs_per_epoch = pairs_per_epoch;
    }

    std::vector<double> center_grad(d);
    std::vector<std::size_t> order(sentences.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        // deterministic per-epoch shuffle of the sentence order
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.index(i)]);
        double epoch_loss = 0.0;
        for (std::size_t si : order) {
            const auto& sent = sentences[si];
            for (std::size_t c = 0; c < sent.size(); ++c) {
                std::size_t lo = c > cfg.window ? c - cfg.window : 0;
                std::size_t hi = std::min(sent.size(), c + cfg.window + 1);
                double* center = syn0.data() + sent[c] * d;
                for (std::size_t x = lo; x < hi; ++x) {
                    if (x == c) continue;
                    double lr =
                        cfg.learning_rate *
                        (1.0 - static_cast<double>(processed) / total_pairs);
                    lr = std::max(lr, lr_floor);
                    ++processed;

                    std::fill(center_grad.begin(), center_grad.end(), 0.0);

                    // positive
                    double* ctx = syn1.data() + sent[x] * d;
                    double s = sigmoid(dot({center, d}, {ctx, d}));
                    if (stats)
                        epoch_loss += log1p_exp_neg(dot({center, d}, {ctx, d}));
                    double gp = (1.0 - s) * lr;
                    for (std::size_t i = 0; i < d; ++i) {
                        center_grad[i] += gp * ctx[i];
                        ctx[i] += gp * center[i];
                    }

                    // negatives; resampling skips the positive token
                    for (std::size_t k = 0; k < cfg.negatives; ++k) {
                        std::size_t neg = sampler.draw(rng);
                        if (neg == sent[x]) continue;
                        double* nv = syn1.data() + neg * d;
                        double sn = sigmoid(dot({center, d}, {nv, d}));
                        if (stats)
                            epoch_loss +=
                                log1p_exp_neg(-dot({center, d}, {nv, d}));
                        double gn = -sn * lr;
                        for (std::size_t i = 0; i < d; ++i) {
                            center_grad[i] += gn * nv[i];
                            nv[i] += gn * center[i];
                        }
                    }
                    for (std::size_t i = 0; i < d; ++i)
                        center[i] += center_grad[i];
                }
            }
        }
        if (stats)
            stats->epoch_loss.push_back(
                pairs_per_epoch ? epoch_loss / pairs_per_epoch : 0.0);
    }

    EmbeddingSpace space(d);
    for (std::size_t i = 0; i < vocab_size; ++i) {
        std::span<const double> vec{syn0.data() + i * d, d};
        for (double v : vec)
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite vector after training");
        space.add(corpus.vocab[kept[i]], vec);
    }
    return space;
}

}  // namespace oma
