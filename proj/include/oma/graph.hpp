#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oma/alignment.hpp"

namespace oma {

struct Triple {
    NodeId subject;
    std::string predicate;
    NodeId object;

    bool operator==(const Triple&) const = default;
};

// Directed labeled multigraph. Nodes keep insertion order; triples keep
// insertion order; nodes may be isolated.
class Graph {
public:
    // returns the node's index; no-op if already present
    std::size_t add_node(const NodeId& id);

    // inserts endpoints and relation label as needed
    void add_triple(Triple t);

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<Triple>& triples() const { return triples_; }
    const std::vector<std::string>& relations() const { return relations_; }

    bool has_node(const NodeId& id) const { return node_index_.count(id) > 0; }
    std::size_t node_index(const NodeId& id) const;
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t triple_count() const { return triples_.size(); }

    // indices into triples() of a node's outgoing triples
    const std::vector<std::size_t>& outgoing(std::size_t node_idx) const {
        return outgoing_[node_idx];
    }

private:
    std::vector<NodeId> nodes_;
    std::unordered_map<NodeId, std::size_t> node_index_;
    std::vector<Triple> triples_;
    std::vector<std::string> relations_;
    std::unordered_map<std::string, std::size_t> relation_index_;
    std::vector<std::vector<std::size_t>> outgoing_;
};

// Poisson out-degree generator: each node draws d ~ Poisson(lambda),
// clamped to n-1, and links to d distinct uniformly drawn other nodes.
// All edges carry the relation label "rel". Deterministic under seed.
Graph generate_synthetic_graph(std::size_t n_nodes, double lambda,
                               std::uint64_t seed);

// Isomorphic copy with node ids suffixed, plus the identity alignment
// mapping each node to its copy.
std::pair<Graph, Alignment> duplicate_graph(const Graph& g,
                                            const std::string& suffix);

// Removes floor(fraction * |E|) triples uniformly without replacement.
// The node set is unchanged; remaining triples keep their order.
Graph remove_triples(const Graph& g, double fraction, std::uint64_t seed);

enum class TripleFormat { TsvTriples, NTriplesSubset };

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
    std::size_t line;
};

struct ParseResult {
    Graph graph;
    std::size_t skipped_literals = 0;  // ntriples-subset only
};

ParseResult parse_triples(std::istream& in, TripleFormat format);
void serialize_triples(const Graph& g, std::ostream& out, TripleFormat format);

}  // namespace oma
