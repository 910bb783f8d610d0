#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oma/alignment.hpp"
#include "oma/embedder.hpp"
#include "oma/orientation.hpp"

namespace oma {

// floor(alpha * n) correspondences sampled uniformly into train, the rest
// into test; both keep the input order. Deterministic under seed.
std::pair<Alignment, Alignment> split_alignment(const Alignment& a,
                                                double alpha,
                                                std::uint64_t seed);

// Replaces the target of floor(noise_rate * n) uniformly chosen
// correspondences by a uniform draw from target_pool minus the correct
// target. Order preserved.
Alignment inject_noise(const Alignment& train, double noise_rate,
                       const std::vector<NodeId>& target_pool,
                       std::uint64_t seed);

struct AnchorBuildResult {
    AnchorSet anchors;
    std::vector<NodeId> skipped;  // ids without a vector in either space
};

AnchorBuildResult build_anchor_set(const Alignment& train,
                                   const EmbeddingSpace& src,
                                   const EmbeddingSpace& tgt);

// For each source candidate with a vector, emits the Euclidean-nearest
// target candidate (many-to-one allowed). Confidence is 1/(1+distance);
// ties break toward the lexicographically smallest target id. Output is
// sorted by source id. Both spaces must already be in the common frame.
Alignment match_nearest(const EmbeddingSpace& src, const EmbeddingSpace& tgt,
                        const std::vector<NodeId>& candidates_src,
                        const std::vector<NodeId>& candidates_tgt,
                        std::size_t* skipped = nullptr);

}  // namespace oma
