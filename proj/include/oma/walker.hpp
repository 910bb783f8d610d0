#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "oma/graph.hpp"

namespace oma {

// Token sequence: node id, relation, node id, ... Always starts at a node.
struct Walk {
    std::vector<std::string> tokens;
};

struct WalkCorpus {
    std::vector<Walk> walks;
    std::vector<std::string> vocab;          // first-encounter order
    std::vector<std::uint64_t> counts;       // parallel to vocab
    std::unordered_map<std::string, std::size_t> vocab_index;

    void add_walk(Walk w);
    std::size_t size() const { return walks.size(); }
    bool empty() const { return walks.empty(); }
};

// walks_per_node uniform random walks from every node, following outgoing
// edges only; a walk ends early at a node without outgoing triples. depth
// counts hops, so a full walk has depth+1 node tokens. Each start node
// uses a sub-seed derived from (seed, node id), so output is independent
// of iteration order.
WalkCorpus generate_walks(const Graph& g, std::size_t walks_per_node,
                          std::size_t depth, std::uint64_t seed);

// one walk per line, space-separated tokens
void dump_corpus(const WalkCorpus& corpus, std::ostream& out);
WalkCorpus load_corpus(std::istream& in);

}  // namespace oma
