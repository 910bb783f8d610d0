#include "oma/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "oma/rng.hpp"

namespace oma {

std::size_t Graph::add_node(const NodeId& id) {
    if (id.empty()) throw std::invalid_argument("empty node id");
    auto it = node_index_.find(id);
    if (it != node_index_.end()) return it->second;
    std::size_t idx = nodes_.size();
    nodes_.push_back(id);
    node_index_.emplace(id, idx);
    outgoing_.emplace_back();
    return idx;
}

void Graph::add_triple(Triple t) {
    std::size_t s = add_node(t.subject);
    add_node(t.object);
    if (relation_index_.emplace(t.predicate, relations_.size()).second)
        relations_.push_back(t.predicate);
    outgoing_[s].push_back(triples_.size());
    triples_.push_back(std::move(t));
}

std::size_t Graph::node_index(const NodeId& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
        throw std::invalid_argument("unknown node: " + id);
    return it->second;
}

Graph generate_synthetic_graph(std::size_t n_nodes, double lambda,
                               std::uint64_t seed) {
    if (n_nodes == 0) throw std::invalid_argument("n_nodes must be positive");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");

    Graph g;
    for (std::size_t i = 0; i < n_nodes; ++i)
        g.add_node("n" + std::to_string(i));

    Rng rng(seed);
    for (std::size_t v = 0; v < n_nodes; ++v) {
        std::size_t degree = static_cast<std::size_t>(rng.poisson(lambda));
        degree = std::min(degree, n_nodes - 1);
        std::unordered_set<std::size_t> picked;
        while (picked.size() < degree) {
            std::size_t u = rng.index(n_nodes);
            if (u == v || picked.count(u)) continue;
            picked.insert(u);
            g.add_triple({g.nodes()[v], "rel", g.nodes()[u]});
        }
    }
    return g;
}

std::pair<Graph, Alignment> duplicate_graph(const Graph& g,
                                            const std::string& suffix) {
    if (suffix.empty()) throw std::invalid_argument("empty suffix");
    Graph copy;
    Alignment alignment;
    for (const NodeId& id : g.nodes()) {
        copy.add_node(id + suffix);
        alignment.add({id, id + suffix});
    }
    for (const Triple& t : g.triples())
        copy.add_triple({t.subject + suffix, t.predicate, t.object + suffix});
    return {std::move(copy), std::move(alignment)};
}

Graph remove_triples(const Graph& g, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("fraction must be in [0,1]");

    std::size_t n = g.triple_count();
    std::size_t n_remove = static_cast<std::size_t>(fraction * n);

    // partial Fisher-Yates picks the removal set
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Rng rng(seed);
    std::vector<bool> removed(n, false);
    for (std::size_t i = 0; i < n_remove; ++i) {
        std::size_t j = i + rng.index(n - i);
        std::swap(idx[i], idx[j]);
        removed[idx[i]] = true;
    }

    Graph out;
    for (const NodeId& id : g.nodes()) out.add_node(id);
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i]) out.add_triple(g.triples()[i]);
    return out;
}

namespace {

// <iri> including the angle brackets; returns the bare IRI
std::string take_iri(const std::string& line, std::size_t& pos,
                     std::size_t lineno) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size() || line[pos] != '<')
        throw ParseError(lineno, "expected IRI");
    std::size_t end = line.find('>', pos);
    if (end == std::string::npos)
        throw ParseError(lineno, "unterminated IRI");
    std::string iri = line.substr(pos + 1, end - pos - 1);
    if (iri.empty()) throw ParseError(lineno, "empty IRI");
    pos = end + 1;
    return iri;
}

bool object_is_literal(const std::string& line, std::size_t pos) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    return pos < line.size() && line[pos] == '"';
}

}  // namespace

ParseResult parse_triples(std::istream& in, TripleFormat format) {
    ParseResult result;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (format == TripleFormat::TsvTriples) {
            std::size_t t1 = line.find('\t');
            std::size_t t2 = t1 == std::string::npos
                                 ? std::string::npos
                                 : line.find('\t', t1 + 1);
            if (t1 == std::string::npos || t2 == std::string::npos ||
                line.find('\t', t2 + 1) != std::string::npos)
                throw ParseError(lineno, "expected 3 tab-separated fields");
            std::string s = line.substr(0, t1);
            std::string p = line.substr(t1 + 1, t2 - t1 - 1);
            std::string o = line.substr(t2 + 1);
            if (s.empty() || p.empty() || o.empty())
                throw ParseError(lineno, "empty field");
            result.graph.add_triple({s, p, o});
        } else {
            std::size_t pos = 0;
            std::string s = take_iri(line, pos, lineno);
            std::string p = take_iri(line, pos, lineno);
            if (object_is_literal(line, pos)) {
                ++result.skipped_literals;
                continue;
            }
            std::string o = take_iri(line, pos, lineno);
            while (pos < line.size() &&
                   (line[pos] == ' ' || line[pos] == '\t'))
                ++pos;
            if (pos >= line.size() || line[pos] != '.')
                throw ParseError(lineno, "missing '.' terminator");
            result.graph.add_triple({s, p, o});
        }
    }
    return result;
}

void serialize_triples(const Graph& g, std::ostream& out,
                       TripleFormat format) {
    for (const Triple& t : g.triples()) {
        if (format == TripleFormat::TsvTriples)
            out << t.subject << '\t' << t.predicate << '\t' << t.object
                << '\n';
        else
            out << '<' << t.subject << "> <" << t.predicate << "> <"
                << t.object << "> .\n";
    }
}

}  // namespace oma
