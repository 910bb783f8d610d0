#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oma/embedder.hpp"
#include "oma/graph.hpp"
#include "oma/rng.hpp"
#include "oma/walker.hpp"

using namespace oma;

namespace {

double cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

TEST_CASE("sgns_pair_loss closed forms") {
    SUBCASE("all scores zero: loss = 2 ln 2") {
        std::vector<double> center = {0.0, 0.0};
        std::vector<double> context = {1.0, 0.0};
        std::vector<std::vector<double>> negs = {{0.0, 1.0}};
        CHECK(sgns_pair_loss(center, context, negs) ==
              doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("saturated positive leaves ln 2 per orthogonal negative") {
        std::vector<double> center = {50.0, 0.0};
        std::vector<double> context = {1.0, 0.0};
        std::vector<std::vector<double>> negs = {{0.0, 1.0}, {0.0, -2.0}};
        CHECK(sgns_pair_loss(center, context, negs) ==
              doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    }
    SUBCASE("dimension mismatch rejected") {
        std::vector<double> center = {0.0, 0.0};
        std::vector<double> context = {1.0};
        CHECK_THROWS_AS(sgns_pair_loss(center, context, {}),
                        std::invalid_argument);
    }
}

TEST_CASE("analytic gradients match central finite differences") {
    // independent oracle: perturb each coordinate by +-h and difference
    const double h = 1e-5;
    Rng rng(1234);
    std::size_t failures = 0;
    for (int draw = 0; draw < 100; ++draw) {
        const std::size_t d = 3;
        auto rand_vec = [&] {
            std::vector<double> v(d);
            for (double& x : v) x = rng.real(-1.0, 1.0);
            return v;
        };
        std::vector<double> center = rand_vec();
        std::vector<double> context = rand_vec();
        std::vector<std::vector<double>> negs = {rand_vec(), rand_vec()};

        SgnsGradients g = sgns_pair_gradients(center, context, negs);

        auto check = [&](std::vector<double>& vec, std::size_t i,
                         double analytic) {
            double orig = vec[i];
            vec[i] = orig + h;
            double up = sgns_pair_loss(center, context, negs);
            vec[i] = orig - h;
            double down = sgns_pair_loss(center, context, negs);
            vec[i] = orig;
            double numeric = (up - down) / (2.0 * h);
            double scale = std::max({std::abs(analytic), std::abs(numeric),
                                     1e-8});
            if (std::abs(analytic - numeric) / scale > 1e-4) ++failures;
        };
        for (std::size_t i = 0; i < d; ++i) {
            check(center, i, g.center[i]);
            check(context, i, g.context[i]);
            check(negs[0], i, g.negatives[0][i]);
            check(negs[1], i, g.negatives[1][i]);
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("training covers the vocabulary with finite nonzero vectors") {
    Graph g = generate_synthetic_graph(10, 2.0, 3);
    WalkCorpus corpus = generate_walks(g, 10, 4, 5);
    TrainingConfig cfg;
    cfg.dimension = 16;
    cfg.epochs = 2;
    cfg.seed = 9;
    EmbeddingSpace space = train(corpus, cfg);

    CHECK(space.dimension() == 16);
    CHECK(space.size() == corpus.vocab.size());
    for (const NodeId& id : g.nodes()) CHECK(space.contains(id));
    CHECK(space.contains("rel"));
    for (const std::string& tok : space.tokens()) {
        double norm = 0.0;
        for (double v : space.vector(tok)) {
            CHECK(std::isfinite(v));
            norm += v * v;
        }
        CHECK(norm > 0.0);
    }
}

TEST_CASE("co-occurring tokens become closer than random pairs") {
    // corpus of repeated "a rel b" walks
    WalkCorpus corpus;
    for (int i = 0; i < 200; ++i) corpus.add_walk({{"a", "rel", "b"}});
    // plus unrelated filler tokens so there are random pairs to compare
    for (int i = 0; i < 50; ++i)
        for (int t = 0; t < 8; ++t)
            corpus.add_walk({{"x" + std::to_string(t)}});

    TrainingConfig cfg;
    cfg.dimension = 16;
    cfg.epochs = 10;
    cfg.seed = 4;
    EmbeddingSpace space = train(corpus, cfg);

    double ab = cosine(space.vector("a"), space.vector("b"));
    Rng rng(12);
    double sum = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto& toks = space.tokens();
        std::size_t p = rng.index(toks.size());
        std::size_t q = rng.index(toks.size());
        while (q == p) q = rng.index(toks.size());
        sum += cosine(space.vector(toks[p]), space.vector(toks[q]));
    }
    CHECK(ab > sum / 100.0);
}

TEST_CASE("loss decreases over epochs") {
    Graph g = generate_synthetic_graph(30, 3.0, 8);
    WalkCorpus corpus = generate_walks(g, 10, 4, 2);
    TrainingConfig cfg;
    cfg.dimension = 16;
    cfg.epochs = 5;
    cfg.seed = 3;
    TrainStats stats;
    train(corpus, cfg, &stats);
    REQUIRE(stats.epoch_loss.size() == 5);
    CHECK(stats.epoch_loss.back() < stats.epoch_loss.front());
}

TEST_CASE("deterministic single-threaded training") {
    Graph g = generate_synthetic_graph(20, 2.0, 1);
    WalkCorpus corpus = generate_walks(g, 5, 3, 2);
    TrainingConfig cfg;
    cfg.dimension = 8;
    cfg.epochs = 2;
    cfg.seed = 77;
    EmbeddingSpace a = train(corpus, cfg);
    EmbeddingSpace b = train(corpus, cfg);
    REQUIRE(a.tokens() == b.tokens());
    for (const std::string& tok : a.tokens()) {
        auto va = a.vector(tok);
        auto vb = b.vector(tok);
        for (std::size_t i = 0; i < va.size(); ++i) CHECK(va[i] == vb[i]);
    }
}

TEST_CASE("min_count drops rare tokens, exact threshold kept") {
    WalkCorpus corpus;
    for (int i = 0; i < 5; ++i) corpus.add_walk({{"common", "also"}});
    corpus.add_walk({{"rare"}});

    TrainingConfig cfg;
    cfg.dimension = 4;
    cfg.min_count = 2;
    cfg.seed = 1;
    EmbeddingSpace space = train(corpus, cfg);
    CHECK(space.contains("common"));
    CHECK(space.contains("also"));
    CHECK_FALSE(space.contains("rare"));

    cfg.min_count = 100;
    CHECK_THROWS_AS(train(corpus, cfg), std::invalid_argument);
}

TEST_CASE("empty corpus rejected") {
    WalkCorpus corpus;
    TrainingConfig cfg;
    CHECK_THROWS_AS(train(corpus, cfg), std::invalid_argument);
}

TEST_CASE("embedding save/load round trip") {
    Graph g = generate_synthetic_graph(8, 2.0, 6);
    WalkCorpus corpus = generate_walks(g, 3, 3, 1);
    TrainingConfig cfg;
    cfg.dimension = 8;
    cfg.epochs = 1;
    EmbeddingSpace space = train(corpus, cfg);

    std::ostringstream out;
    space.save(out);
    std::istringstream in(out.str());
    EmbeddingSpace back = EmbeddingSpace::load(in);

    CHECK(back.dimension() == space.dimension());
    REQUIRE(back.tokens() == space.tokens());
    for (const std::string& tok : space.tokens()) {
        auto va = space.vector(tok);
        auto vb = back.vector(tok);
        for (std::size_t i = 0; i < va.size(); ++i)
            CHECK(vb[i] == doctest::Approx(va[i]).epsilon(1e-15));
    }
}
