#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "oma/walker.hpp"

using namespace oma;

TEST_CASE("isolated node walks are single tokens") {
    Graph g;
    g.add_node("v");
    g.add_node("w");
    WalkCorpus corpus = generate_walks(g, 5, 6, 1);
    REQUIRE(corpus.size() == 10);
    for (const Walk& w : corpus.walks) CHECK(w.tokens.size() == 1);
}

TEST_CASE("chain walk is fully determined") {
    Graph g;
    g.add_triple({"a", "rel", "b"});
    g.add_triple({"b", "rel", "c"});
    WalkCorpus corpus = generate_walks(g, 4, 6, 9);
    std::vector<std::string> from_a = {"a", "rel", "b", "rel", "c"};
    std::size_t count_a = 0;
    for (const Walk& w : corpus.walks) {
        if (w.tokens.front() == "a") {
            CHECK(w.tokens == from_a);
            ++count_a;
        }
    }
    CHECK(count_a == 4);
}

TEST_CASE("corpus size is |V| * walks_per_node") {
    Graph g = generate_synthetic_graph(40, 3.0, 2);
    WalkCorpus corpus = generate_walks(g, 7, 4, 3);
    CHECK(corpus.size() == 40 * 7);
}

TEST_CASE("walk shape and graph consistency") {
    Graph g = generate_synthetic_graph(30, 3.0, 5);
    std::set<std::tuple<std::string, std::string, std::string>> triples;
    for (const Triple& t : g.triples())
        triples.insert({t.subject, t.predicate, t.object});

    WalkCorpus corpus = generate_walks(g, 10, 5, 8);
    for (const Walk& w : corpus.walks) {
        CHECK(w.tokens.size() % 2 == 1);
        CHECK(w.tokens.size() <= 2 * 5 + 1);
        CHECK(g.has_node(w.tokens.front()));
        for (std::size_t i = 0; i + 2 < w.tokens.size(); i += 2)
            CHECK(triples.count(
                {w.tokens[i], w.tokens[i + 1], w.tokens[i + 2]}));
    }
}

TEST_CASE("every node appears in the vocabulary") {
    Graph g = generate_synthetic_graph(25, 2.0, 4);
    WalkCorpus corpus = generate_walks(g, 3, 4, 6);
    for (const NodeId& id : g.nodes()) CHECK(corpus.vocab_index.count(id));
    // counts cover exactly the tokens in the walks
    std::uint64_t total = 0;
    for (std::uint64_t c : corpus.counts) {
        CHECK(c > 0);
        total += c;
    }
    std::uint64_t tokens = 0;
    for (const Walk& w : corpus.walks) tokens += w.tokens.size();
    CHECK(total == tokens);
}

TEST_CASE("determinism under seed") {
    Graph g = generate_synthetic_graph(30, 3.0, 1);
    WalkCorpus a = generate_walks(g, 5, 4, 77);
    WalkCorpus b = generate_walks(g, 5, 4, 77);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.walks[i].tokens == b.walks[i].tokens);
    WalkCorpus c = generate_walks(g, 5, 4, 78);
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i)
        same = a.walks[i].tokens == c.walks[i].tokens;
    CHECK_FALSE(same);
}

TEST_CASE("corpus dump/load round trip") {
    Graph g = generate_synthetic_graph(15, 2.0, 3);
    WalkCorpus corpus = generate_walks(g, 3, 3, 4);
    std::ostringstream out;
    dump_corpus(corpus, out);
    std::istringstream in(out.str());
    WalkCorpus back = load_corpus(in);
    REQUIRE(back.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        CHECK(back.walks[i].tokens == corpus.walks[i].tokens);
    CHECK(back.vocab == corpus.vocab);
    CHECK(back.counts == corpus.counts);
}

TEST_CASE("bad arguments") {
    Graph g;
    CHECK_THROWS_AS(generate_walks(g, 5, 5, 1), std::invalid_argument);
    g.add_node("v");
    CHECK_THROWS_AS(generate_walks(g, 0, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_walks(g, 5, 0, 1), std::invalid_argument);
}
