#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "oma/experiments.hpp"

using namespace oma;

namespace {

Alignment pairs(std::initializer_list<std::pair<const char*, const char*>> ps) {
    Alignment a;
    for (const auto& [s, t] : ps) a.add({s, t});
    return a;
}

}  // namespace

TEST_CASE("evaluate") {
    SUBCASE("perfect prediction") {
        Alignment ref = pairs({{"a", "1"}, {"b", "2"}, {"c", "3"},
                               {"d", "4"}, {"e", "5"}});
        EvalReport r = evaluate(ref, ref);
        CHECK(r.true_positives == 5);
        CHECK(r.precision == 1.0);
        CHECK(r.recall == 1.0);
        CHECK(r.f1 == 1.0);
    }
    SUBCASE("empty prediction uses the zero-division convention") {
        Alignment ref = pairs({{"a", "1"}, {"b", "2"}, {"c", "3"},
                               {"d", "4"}, {"e", "5"}});
        EvalReport r = evaluate(Alignment{}, ref);
        CHECK(r.precision == 0.0);
        CHECK(r.recall == 0.0);
        CHECK(r.f1 == 0.0);
    }
    SUBCASE("4 predicted, 3 correct, 6 reference") {
        Alignment ref = pairs({{"a", "1"}, {"b", "2"}, {"c", "3"},
                               {"d", "4"}, {"e", "5"}, {"f", "6"}});
        Alignment pred = pairs({{"a", "1"}, {"b", "2"}, {"c", "3"},
                                {"d", "9"}});
        EvalReport r = evaluate(pred, ref);
        CHECK(r.true_positives == 3);
        CHECK(r.precision == doctest::Approx(0.75));
        CHECK(r.recall == doctest::Approx(0.5));
        CHECK(r.f1 == doctest::Approx(0.6));
    }
    SUBCASE("P and R swap when predicted and reference swap") {
        Alignment ref = pairs({{"a", "1"}, {"b", "2"}, {"c", "3"}});
        Alignment pred = pairs({{"a", "1"}, {"x", "9"}});
        EvalReport fwd = evaluate(pred, ref);
        EvalReport rev = evaluate(ref, pred);
        CHECK(fwd.precision == rev.recall);
        CHECK(fwd.recall == rev.precision);
        CHECK(fwd.true_positives == rev.true_positives);
    }
    SUBCASE("only the (source, target) pair matters") {
        Alignment ref = pairs({{"a", "1"}});
        Alignment pred;
        pred.add({"a", "1", "=", 0.01});
        CHECK(evaluate(pred, ref).true_positives == 1);
    }
}

TEST_CASE("experiment config parsing") {
    std::istringstream in(
        "# desk scale\n"
        "nodes = 300\n"
        "lambda = 3.5\n"
        "dimension = 32\n"
        "walks = 25\n"
        "depth = 3\n"
        "alpha = 0.4\n"
        "repetitions = 2\n"
        "master_seed = 99\n"
        "alphas = 0.2,0.5\n"
        "sweep_values = 0.0,0.3,0.6\n");
    ExperimentConfig cfg = load_experiment_config(in);
    CHECK(cfg.nodes == 300);
    CHECK(cfg.lambda == doctest::Approx(3.5));
    CHECK(cfg.dimension == 32);
    CHECK(cfg.walks == 25);
    CHECK(cfg.depth == 3);
    CHECK(cfg.alpha == doctest::Approx(0.4));
    CHECK(cfg.repetitions == 2);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.alphas == std::vector<double>{0.2, 0.5});
    CHECK(cfg.sweep_values == std::vector<double>{0.0, 0.3, 0.6});
    // untouched keys keep defaults
    CHECK(cfg.window == 6);
    CHECK(cfg.epochs == 5);

    SUBCASE("unknown key rejected") {
        std::istringstream bad("nodse = 10\n");
        CHECK_THROWS(load_experiment_config(bad));
    }
    SUBCASE("bad value rejected") {
        std::istringstream bad("nodes = many\n");
        CHECK_THROWS(load_experiment_config(bad));
    }
}

TEST_CASE("emit_report") {
    SUBCASE("single row gives a two-line CSV") {
        SweepResult result;
        result.control_name = "alpha";
        result.rows.push_back({0.2, 0, 1.0, 0.9});
        std::ostringstream csv;
        emit_report(result, csv);
        std::string text = csv.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 2);
        CHECK(text.rfind("control,repetition,train_precision,test_precision\n",
                         0) == 0);
    }
    SUBCASE("10 values x 5 reps gives 51 lines") {
        SweepResult result;
        result.control_name = "noise";
        for (int v = 0; v < 10; ++v)
            for (std::size_t rep = 0; rep < 5; ++rep)
                result.rows.push_back({v * 0.1, rep, 1.0, 1.0});
        std::ostringstream csv;
        emit_report(result, csv);
        std::string text = csv.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 51);
    }
    SUBCASE("summary means are exact") {
        SweepResult result;
        result.control_name = "alpha";
        result.rows.push_back({0.2, 0, 1.0, 1.0});
        result.rows.push_back({0.2, 1, 1.0, 1.0});
        result.rows.push_back({0.2, 2, 1.0, 0.5});
        std::ostringstream csv, summary;
        emit_report(result, csv, &summary);
        // mean of {1.0, 1.0, 0.5}
        CHECK(summary.str().find("0.833333") != std::string::npos);
    }
    SUBCASE("empty result rejected") {
        SweepResult result;
        std::ostringstream csv;
        CHECK_THROWS_AS(emit_report(result, csv), std::invalid_argument);
    }
}

TEST_CASE("tiny duplicate experiment is deterministic and sane") {
    ExperimentConfig cfg;
    cfg.nodes = 60;
    cfg.dimension = 16;
    cfg.walks = 10;
    cfg.depth = 3;
    cfg.epochs = 2;
    cfg.repetitions = 1;
    cfg.alphas = {0.5};
    cfg.master_seed = 7;

    SweepResult a = run_duplicate_experiment(cfg);
    SweepResult b = run_duplicate_experiment(cfg);
    REQUIRE(a.rows.size() == 1);
    CHECK(a.rows[0].train_precision == b.rows[0].train_precision);
    CHECK(a.rows[0].test_precision == b.rows[0].test_precision);
    CHECK(a.rows[0].train_precision >= 0.0);
    CHECK(a.rows[0].train_precision <= 1.0);
    CHECK(a.rows[0].test_precision >= 0.0);
    CHECK(a.rows[0].test_precision <= 1.0);
}

TEST_CASE("tiny noise sweep shapes") {
    ExperimentConfig cfg;
    cfg.nodes = 60;
    cfg.dimension = 16;
    cfg.walks = 10;
    cfg.depth = 3;
    cfg.epochs = 2;
    cfg.repetitions = 2;
    cfg.alpha = 0.5;
    cfg.sweep_values = {0.0, 0.5};
    cfg.master_seed = 7;

    SweepResult r = run_noise_sweep(cfg);
    CHECK(r.control_name == "noise");
    REQUIRE(r.rows.size() == 4);
    CHECK(r.rows[0].control == 0.0);
    CHECK(r.rows[3].control == 0.5);
    CHECK(r.rows[3].repetition == 1);
}

TEST_CASE("tiny heterogeneity sweep shapes") {
    ExperimentConfig cfg;
    cfg.nodes = 60;
    cfg.dimension = 16;
    cfg.walks = 10;
    cfg.depth = 3;
    cfg.epochs = 2;
    cfg.repetitions = 1;
    cfg.alpha = 0.5;
    cfg.sweep_values = {0.0, 0.4};
    cfg.master_seed = 7;

    SweepResult r = run_heterogeneity_sweep(cfg);
    CHECK(r.control_name == "removed_fraction");
    REQUIRE(r.rows.size() == 2);
    for (const SweepRow& row : r.rows) {
        CHECK(row.test_precision >= 0.0);
        CHECK(row.test_precision <= 1.0);
    }
}
