#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "oma/embedder.hpp"

namespace oma {

// Paired source/target vectors used to fit the rotation, row-major n x d.
struct AnchorSet {
    std::size_t dimension = 0;
    std::vector<double> source;
    std::vector<double> target;

    std::size_t size() const {
        return dimension ? source.size() / dimension : 0;
    }
    void add(std::span<const double> a, std::span<const double> b);
    std::span<const double> source_row(std::size_t i) const {
        return {source.data() + i * dimension, dimension};
    }
    std::span<const double> target_row(std::size_t i) const {
        return {target.data() + i * dimension, dimension};
    }
};

struct RotationModel {
    std::size_t dimension = 0;
    std::vector<double> source_mean;
    std::vector<double> target_mean;
    std::vector<double> rotation;  // row-major d x d, applied as row * R
    double determinant = 1.0;      // may be -1: reflections are not corrected
    bool rank_deficient = false;
};

// Absolute orientation: center both anchor sets, accumulate the cross
// products H = sum b_i a_i^T, take svd(H) = U S V^T and return R = U V^T.
RotationModel compute_rotation(const AnchorSet& anchors);

enum class Side { Source, Target };

// Source side: subtract the source mean. Target side: subtract the target
// mean, then multiply each row vector by R. Both spaces end up in the
// centered-source frame.
EmbeddingSpace apply_rotation(const RotationModel& model,
                              const EmbeddingSpace& space, Side side);

void save_rotation(const RotationModel& model, std::ostream& out);
RotationModel load_rotation(std::istream& in);

}  // namespace oma
