#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oma {

using NodeId = std::string;

// A single correspondence between two graph elements. The relation is
// always equivalence here, written "=".
struct Correspondence {
    NodeId source;
    NodeId target;
    std::string relation = "=";
    double confidence = 1.0;

    bool operator==(const Correspondence&) const = default;
};

struct Alignment {
    std::vector<Correspondence> correspondences;

    std::size_t size() const { return correspondences.size(); }
    bool empty() const { return correspondences.empty(); }
    void add(Correspondence c) { correspondences.push_back(std::move(c)); }
};

// TSV with header "source\ttarget\trelation\tconfidence". Readers accept
// three-column files (confidence defaults to 1.0).
void save_alignment(const Alignment& a, std::ostream& out);
Alignment load_alignment(std::istream& in);

}  // namespace oma
