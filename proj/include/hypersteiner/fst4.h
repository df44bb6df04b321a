#pragma once

// Four-terminal full Steiner trees by alternating Fermat-point solves.

#include "hypersteiner/fermat.h"

#include <optional>
#include <vector>

namespace hypersteiner {

/// Which terminals share the first Steiner point; terminals are w, x, y, z
/// in input order.
enum class Fst4Topology { WX_YZ, WY_XZ };

const char* to_string(Fst4Topology t);

struct Fst4Options {
    double iter_tol = 1e-10;  // hyperbolic distance moved per sweep
    int max_sweeps = 100;
};

struct Fst4Solution {
    Fst4Topology topology = Fst4Topology::WX_YZ;
    KleinPoint steiner1;  // joined to the first pair
    KleinPoint steiner2;  // joined to the second pair
    double length = 0.0;
    int iterations = 0;
};

struct Fst4Result {
    FstStatus status = FstStatus::NoFst;
    std::optional<Fst4Solution> solution;

    bool ok() const { return status == FstStatus::Ok; }
};

/// Terminal indices (into w, x, y, z) of the two pairs of a topology.
std::array<std::array<int, 2>, 2> pairs_of(Fst4Topology t);

/// Iterates s2 = fermat(pair2, s1), s1 = fermat(pair1, s2) from a seed on the
/// 2pi/3 isoptic of pair1 until neither point moves more than iter_tol.
/// NoFst if a subproblem is inadmissible, fails to solve while collapsing
/// (within 1e-3 rad of the threshold, or a 1e-3 sliver), or the converged
/// tree is longer
/// than the terminals' MST; IterationFailure after max_sweeps; a Fermat
/// solver failure is passed through. `sweep_lengths`, if given, receives the
/// tree length after each sweep.
Fst4Result fst4_iterate(const KleinPoint& w, const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                        Fst4Topology topo, const SolverConfig& cfg = {}, const Fst4Options& opts = {},
                        std::vector<double>* sweep_lengths = nullptr);

/// Shorter of the two topologies, ties going to WX_YZ. A failure status is
/// reported only when both topologies fail and neither was inadmissible.
Fst4Result fst4_best(const KleinPoint& w, const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                     const SolverConfig& cfg = {}, const Fst4Options& opts = {});

/// A point s with angle_at(s, a, b) = alpha, on the side of line ab facing
/// `side` (on the perpendicular through the chord midpoint).
std::optional<KleinPoint> point_on_isoptic(const KleinPoint& a, const KleinPoint& b, double alpha, Vec2 side);

}  // namespace hypersteiner
