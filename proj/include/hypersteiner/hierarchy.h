#pragma once

// Root-to-terminal path lengths over a tree and their comparison with
// reference ages.

#include "hypersteiner/pipeline.h"

#include <cstdint>
#include <vector>

namespace hypersteiner {

struct AgeVector {
    std::vector<double> ages;  // indexed by terminal id
    int root_id = 0;
};

/// Path length from root_id to every terminal. Throws std::invalid_argument
/// if root_id is not a terminal, std::logic_error if the tree is not connected.
AgeVector tree_ages(const SteinerTree& tree, int root_id);

/// Euclidean norm of pred - ref. Throws std::invalid_argument on a size
/// mismatch.
double distance_error(const AgeVector& pred, const AgeVector& ref);

struct Subset {
    std::vector<KleinPoint> points;
    std::vector<int> labels;      // empty if no labels were given
    std::vector<int> indices;     // into the original arrays, ascending
    int root_index = 0;           // position of the root within `indices`
};

/// floor(keep_fraction * n) points drawn uniformly without replacement, plus
/// the root if it was not drawn. Throws std::invalid_argument unless
/// 0 < keep_fraction <= 1 and root_id is a valid index.
Subset subsample(const std::vector<KleinPoint>& points, const std::vector<int>& labels, double keep_fraction,
                 std::uint64_t seed, int root_id);

/// Binary tree of geodesic branches grown from the origin; points are drawn
/// along the branches and perturbed by a wrapped Gaussian.
struct PlantedTreeSpec {
    int depth = 3;
    double branch_length = 0.8;  // hyperbolic
    double spread = 0.6;         // radians between a branch and each child
    double noise = 0.05;         // tangent-space standard deviation
    int n = 200;                 // including the root point
    std::uint64_t seed = 0;
};

struct PlantedTree {
    std::vector<KleinPoint> points;  // points[0] is the root, at the origin
    std::vector<int> labels;         // branch index, 0 for the root point
    AgeVector ages;                  // arc length from the root along the branches
};

/// Throws std::invalid_argument on out-of-range fields.
PlantedTree sample_planted_tree(const PlantedTreeSpec& spec);

}  // namespace hypersteiner
