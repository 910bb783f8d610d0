#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oma/experiments.hpp"
#include "oma/graph.hpp"
#include "oma/matcher.hpp"
#include "oma/orientation.hpp"
#include "oma/rng.hpp"
#include "oma/walker.hpp"

namespace {

using namespace oma;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

TripleFormat parse_format(const std::string& name) {
    if (name == "tsv") return TripleFormat::TsvTriples;
    if (name == "ntriples") return TripleFormat::NTriplesSubset;
    throw CLI::ValidationError("--format", "expected 'tsv' or 'ntriples'");
}

Graph read_graph(const std::string& path, const std::string& format) {
    auto in = open_in(path);
    ParseResult parsed = parse_triples(in, parse_format(format));
    if (parsed.skipped_literals)
        std::cerr << path << ": skipped " << parsed.skipped_literals
                  << " literal statement(s)\n";
    return std::move(parsed.graph);
}

std::vector<NodeId> read_id_list(const std::string& path) {
    auto in = open_in(path);
    std::vector<NodeId> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) ids.push_back(line);
    }
    return ids;
}

void print_report(const EvalReport& r) {
    std::cout << "tp=" << r.true_positives << " predicted=" << r.predicted
              << " reference=" << r.reference << "\n";
    std::cout.precision(6);
    std::cout << "precision=" << r.precision << " recall=" << r.recall
              << " f1=" << r.f1 << "\n";
}

struct EmbedOptions {
    std::size_t dimension = 100;
    std::size_t window = 6;
    std::size_t epochs = 5;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
    std::uint64_t min_count = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--dim", dimension, "embedding dimension")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--window", window, "context window size")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--epochs", epochs, "training epochs")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--negatives", negatives, "negative samples per pair")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--lr", learning_rate, "initial learning rate")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--min-count", min_count, "token frequency floor");
    }

    TrainingConfig config(std::uint64_t seed) const {
        TrainingConfig tc;
        tc.dimension = dimension;
        tc.window = window;
        tc.epochs = epochs;
        tc.negatives = negatives;
        tc.learning_rate = learning_rate;
        tc.min_count = min_count;
        tc.seed = seed;
        return tc;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph matching via embedding-space rotation"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "master seed for all randomness");
    unsigned threads = 1;
    app.add_option("--threads", threads,
                   "worker thread cap (the pipeline is currently "
                   "single-threaded; 1 is the deterministic mode)")
        ->check(CLI::PositiveNumber);

    // generate
    auto* gen = app.add_subcommand(
        "generate", "generate a synthetic Poisson graph (optionally with a "
                    "duplicate and reference alignment)");
    std::size_t gen_nodes = 0;
    double gen_lambda = 4.0;
    std::string gen_out, gen_format = "tsv", gen_suffix, gen_dup_out, gen_ref;
    gen->add_option("--nodes", gen_nodes, "node count")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--lambda", gen_lambda, "Poisson mean out-degree")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--out", gen_out, "output graph file")->required();
    gen->add_option("--format", gen_format, "tsv|ntriples");
    gen->add_option("--duplicate-suffix", gen_suffix,
                    "also emit a renamed duplicate graph");
    gen->add_option("--dup-out", gen_dup_out, "duplicate graph file");
    gen->add_option("--ref", gen_ref, "reference alignment file");

    // walk
    auto* walk = app.add_subcommand("walk", "generate a random-walk corpus");
    std::string walk_graph, walk_out, walk_format = "tsv";
    std::size_t walk_count = 150, walk_depth = 6;
    walk->add_option("--graph", walk_graph, "input graph file")->required();
    walk->add_option("--format", walk_format, "tsv|ntriples");
    walk->add_option("--out", walk_out, "corpus output file")->required();
    walk->add_option("--walks", walk_count, "walks per node")
        ->check(CLI::PositiveNumber);
    walk->add_option("--depth", walk_depth, "walk depth in hops")
        ->check(CLI::PositiveNumber);

    // embed
    auto* embed = app.add_subcommand("embed", "train SGNS vectors on a corpus");
    std::string embed_corpus, embed_out;
    EmbedOptions embed_opts;
    embed->add_option("--corpus", embed_corpus, "walk corpus file")->required();
    embed->add_option("--out", embed_out, "embedding output file")->required();
    embed_opts.attach(embed);

    // rotate
    auto* rotate = app.add_subcommand(
        "rotate", "fit the absolute-orientation rotation from anchors");
    std::string rot_src, rot_tgt, rot_anchors, rot_model_out;
    std::string rot_src_out, rot_tgt_out;
    rotate->add_option("--source-emb", rot_src, "source embedding file")
        ->required();
    rotate->add_option("--target-emb", rot_tgt, "target embedding file")
        ->required();
    rotate->add_option("--anchors", rot_anchors, "anchor alignment TSV")
        ->required();
    rotate->add_option("--model-out", rot_model_out, "rotation model file")
        ->required();
    rotate->add_option("--rotated-source-out", rot_src_out,
                       "centered source embedding file");
    rotate->add_option("--rotated-target-out", rot_tgt_out,
                       "centered+rotated target embedding file");

    // match
    auto* match = app.add_subcommand(
        "match", "nearest-neighbor matching of two (rotated) spaces");
    std::string match_src, match_tgt, match_out, match_model;
    std::string match_cand_src, match_cand_tgt;
    match->add_option("--source-emb", match_src, "source embedding file")
        ->required();
    match->add_option("--target-emb", match_tgt, "target embedding file")
        ->required();
    match->add_option("--out", match_out, "predicted alignment TSV")
        ->required();
    match->add_option("--model", match_model,
                      "rotation model to apply before matching");
    match->add_option("--candidates-src", match_cand_src,
                      "source candidate ids, one per line (default: all)");
    match->add_option("--candidates-tgt", match_cand_tgt,
                      "target candidate ids, one per line (default: all)");

    // evaluate
    auto* eval = app.add_subcommand(
        "evaluate", "micro precision/recall/F1 of an alignment");
    std::string eval_pred, eval_ref;
    eval->add_option("--predicted", eval_pred, "predicted alignment TSV")
        ->required();
    eval->add_option("--reference", eval_ref, "reference alignment TSV")
        ->required();

    // pipeline
    auto* pipe = app.add_subcommand(
        "pipeline",
        "walk + embed both graphs, rotate via anchors, match, evaluate");
    std::string pipe_src, pipe_tgt, pipe_format = "tsv", pipe_anchors;
    std::string pipe_out, pipe_eval;
    std::size_t pipe_walks = 150, pipe_depth = 6;
    EmbedOptions pipe_opts;
    pipe->add_option("--source", pipe_src, "source graph file")->required();
    pipe->add_option("--target", pipe_tgt, "target graph file")->required();
    pipe->add_option("--format", pipe_format, "tsv|ntriples");
    pipe->add_option("--anchors", pipe_anchors, "anchor alignment TSV")
        ->required();
    pipe->add_option("--out", pipe_out, "predicted alignment TSV")->required();
    pipe->add_option("--eval", pipe_eval, "reference alignment to score");
    pipe->add_option("--walks", pipe_walks, "walks per node")
        ->check(CLI::PositiveNumber);
    pipe->add_option("--depth", pipe_depth, "walk depth in hops")
        ->check(CLI::PositiveNumber);
    pipe_opts.attach(pipe);

    // experiment
    auto* exp = app.add_subcommand(
        "experiment", "run a synthetic sweep and emit a CSV report");
    std::string exp_sweep, exp_config, exp_out;
    exp->add_option("--sweep", exp_sweep,
                    "training-size|noise|heterogeneity")
        ->required();
    exp->add_option("--config", exp_config, "experiment config file")
        ->required();
    exp->add_option("--out", exp_out, "CSV output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            Graph g = generate_synthetic_graph(gen_nodes, gen_lambda, seed);
            auto out = open_out(gen_out);
            serialize_triples(g, out, parse_format(gen_format));
            std::cout << "graph: " << g.node_count() << " nodes, "
                      << g.triple_count() << " triples\n";
            if (!gen_suffix.empty()) {
                if (gen_dup_out.empty())
                    throw CLI::ValidationError(
                        "--dup-out", "required with --duplicate-suffix");
                auto [copy, reference] = duplicate_graph(g, gen_suffix);
                auto dup = open_out(gen_dup_out);
                serialize_triples(copy, dup, parse_format(gen_format));
                if (!gen_ref.empty()) {
                    auto ref = open_out(gen_ref);
                    save_alignment(reference, ref);
                    std::cout << "reference: " << reference.size()
                              << " correspondences\n";
                }
            }
        } else if (*walk) {
            Graph g = read_graph(walk_graph, walk_format);
            WalkCorpus corpus = generate_walks(g, walk_count, walk_depth, seed);
            auto out = open_out(walk_out);
            dump_corpus(corpus, out);
            std::cout << "corpus: " << corpus.size() << " walks, "
                      << corpus.vocab.size() << " tokens\n";
        } else if (*embed) {
            auto in = open_in(embed_corpus);
            WalkCorpus corpus = load_corpus(in);
            EmbeddingSpace space = train(corpus, embed_opts.config(seed));
            auto out = open_out(embed_out);
            space.save(out);
            std::cout << "embedding: " << space.size() << " vectors, d="
                      << space.dimension() << "\n";
        } else if (*rotate) {
            auto src_in = open_in(rot_src);
            auto tgt_in = open_in(rot_tgt);
            EmbeddingSpace src = EmbeddingSpace::load(src_in);
            EmbeddingSpace tgt = EmbeddingSpace::load(tgt_in);
            auto anchors_in = open_in(rot_anchors);
            Alignment anchors_align = load_alignment(anchors_in);
            AnchorBuildResult anchors =
                build_anchor_set(anchors_align, src, tgt);
            if (!anchors.skipped.empty())
                std::cerr << "skipped " << anchors.skipped.size()
                          << " anchor(s) without vectors\n";
            RotationModel model = compute_rotation(anchors.anchors);
            auto out = open_out(rot_model_out);
            save_rotation(model, out);
            std::cout << "rotation: d=" << model.dimension
                      << " anchors=" << anchors.anchors.size()
                      << " det=" << model.determinant
                      << (model.rank_deficient ? " (rank-deficient)" : "")
                      << "\n";
            if (!rot_src_out.empty()) {
                auto o = open_out(rot_src_out);
                apply_rotation(model, src, Side::Source).save(o);
            }
            if (!rot_tgt_out.empty()) {
                auto o = open_out(rot_tgt_out);
                apply_rotation(model, tgt, Side::Target).save(o);
            }
        } else if (*match) {
            auto src_in = open_in(match_src);
            auto tgt_in = open_in(match_tgt);
            EmbeddingSpace src = EmbeddingSpace::load(src_in);
            EmbeddingSpace tgt = EmbeddingSpace::load(tgt_in);
            if (!match_model.empty()) {
                auto min = open_in(match_model);
                RotationModel model = load_rotation(min);
                src = apply_rotation(model, src, Side::Source);
                tgt = apply_rotation(model, tgt, Side::Target);
            }
            std::vector<NodeId> cand_src = match_cand_src.empty()
                                               ? src.tokens()
                                               : read_id_list(match_cand_src);
            std::vector<NodeId> cand_tgt = match_cand_tgt.empty()
                                               ? tgt.tokens()
                                               : read_id_list(match_cand_tgt);
            std::size_t skipped = 0;
            Alignment predicted =
                match_nearest(src, tgt, cand_src, cand_tgt, &skipped);
            auto out = open_out(match_out);
            save_alignment(predicted, out);
            std::cout << "matched " << predicted.size() << " source node(s)";
            if (skipped) std::cout << ", skipped " << skipped;
            std::cout << "\n";
        } else if (*eval) {
            auto pin = open_in(eval_pred);
            auto rin = open_in(eval_ref);
            print_report(evaluate(load_alignment(pin), load_alignment(rin)));
        } else if (*pipe) {
            Graph src_g = read_graph(pipe_src, pipe_format);
            Graph tgt_g = read_graph(pipe_tgt, pipe_format);
            WalkCorpus src_corpus = generate_walks(
                src_g, pipe_walks, pipe_depth, mix_seed(seed, "walks_src"));
            WalkCorpus tgt_corpus = generate_walks(
                tgt_g, pipe_walks, pipe_depth, mix_seed(seed, "walks_tgt"));
            EmbeddingSpace src_emb =
                train(src_corpus, pipe_opts.config(mix_seed(seed, "embed_src")));
            EmbeddingSpace tgt_emb =
                train(tgt_corpus, pipe_opts.config(mix_seed(seed, "embed_tgt")));
            auto anchors_in = open_in(pipe_anchors);
            Alignment anchors_align = load_alignment(anchors_in);
            AnchorBuildResult anchors =
                build_anchor_set(anchors_align, src_emb, tgt_emb);
            if (!anchors.skipped.empty())
                std::cerr << "skipped " << anchors.skipped.size()
                          << " anchor(s) without vectors\n";
            RotationModel model = compute_rotation(anchors.anchors);
            EmbeddingSpace src_rot =
                apply_rotation(model, src_emb, Side::Source);
            EmbeddingSpace tgt_rot =
                apply_rotation(model, tgt_emb, Side::Target);
            Alignment predicted = match_nearest(src_rot, tgt_rot,
                                                src_g.nodes(), tgt_g.nodes());
            auto out = open_out(pipe_out);
            save_alignment(predicted, out);
            std::cout << "predicted " << predicted.size()
                      << " correspondence(s)\n";
            if (!pipe_eval.empty()) {
                auto rin = open_in(pipe_eval);
                print_report(evaluate(predicted, load_alignment(rin)));
            }
        } else if (*exp) {
            if (exp_sweep != "training-size" && exp_sweep != "noise" &&
                exp_sweep != "heterogeneity")
                throw CLI::ValidationError(
                    "--sweep",
                    "expected training-size, noise, or heterogeneity");
            auto cin = open_in(exp_config);
            ExperimentConfig cfg = load_experiment_config(cin);
            if (app.count("--seed")) cfg.master_seed = seed;
            SweepResult result;
            if (exp_sweep == "training-size")
                result = run_duplicate_experiment(cfg);
            else if (exp_sweep == "noise")
                result = run_noise_sweep(cfg);
            else if (exp_sweep == "heterogeneity")
                result = run_heterogeneity_sweep(cfg);
            else
                throw CLI::ValidationError(
                    "--sweep",
                    "expected training-size, noise, or heterogeneity");
            auto out = open_out(exp_out);
            emit_report(result, out, &std::cout);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
