#pragma once

// Three-terminal full Steiner trees: isoptic curves, the admissibility test,
// and the Newton ("Simple") and multistart polynomial ("Precise") solvers.

#include "hypersteiner/klein.h"

#include <numbers>
#include <optional>
#include <vector>

namespace hypersteiner {

inline constexpr double kSteinerAngle = 2.0 * std::numbers::pi / 3.0;
/// Triangles within this many radians of the 2pi/3 threshold are treated as
/// not admitting a full Steiner tree.
inline constexpr double kAngleGuard = 1e-9;
/// Steiner angles accepted by the root filter.
inline constexpr double kAngleFilterTol = 1e-6;

enum class SolverMode { Simple, Precise };

struct SolverConfig {
    SolverMode mode = SolverMode::Simple;
    double newton_tol = 1e-12;      // on the normalized residual (cos theta - cos alpha)
    int newton_max_iter = 100;
    double root_filter_tol = 1e-8;  // on |phi|
    int grid_n = 64;                // Precise multistart lattice is grid_n x grid_n
};

/// Throws std::invalid_argument if a field is out of range.
void validate(const SolverConfig& cfg);

enum class FstStatus { Ok, NoFst, SolverFailure, NumericalFailure, IterationFailure };

const char* to_string(FstStatus s);

struct Fst3Solution {
    KleinPoint steiner;
    double length = 0.0;
    double ratio = 1.0;  // length over the triangle's own two-edge MST
};

struct Fst3Result {
    FstStatus status = FstStatus::NoFst;
    std::optional<Fst3Solution> solution;

    bool ok() const { return status == FstStatus::Ok; }
};

/// Isoptic residual phi_{x,y,alpha}(s): zero iff segment xy subtends angle
/// alpha at s. Evaluated in a form that stays accurate when s is near x or y.
double isoptic_phi(const KleinPoint& x, const KleinPoint& y, double alpha, const KleinPoint& s);

/// Squared rearrangement of phi; vanishes where the angle is alpha or pi - alpha.
double isoptic_psi(const KleinPoint& x, const KleinPoint& y, double alpha, const KleinPoint& s);

/// True iff every inner angle of the geodesic triangle is below 2pi/3 - kAngleGuard.
bool admits_fst(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c);

/// Sum of the two shortest sides of the triangle.
double triangle_mst_length(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c);

/// Fermat point of (a, b, c), solving phi_{a,b} = phi_{b,c} = 0 at angle 2pi/3.
/// NoFst if the triangle is inadmissible. Simple mode returns SolverFailure if
/// neither Newton run yields a point with three 2pi/3 angles; Precise mode
/// then searches the quartic system and returns NumericalFailure if that
/// yields nothing either. A `start` strictly inside the triangle is tried
/// before the default Newton starts.
Fst3Result fermat_point(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c,
                        const SolverConfig& cfg = {}, std::optional<KleinPoint> start = std::nullopt);

/// Deduplicated real roots inside the disk of psi_{x,y} = psi_{y,z} = 0,
/// found by Newton from a grid_n x grid_n lattice over the bounding box.
std::vector<KleinPoint> psi_system_roots(const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                                         const SolverConfig& cfg = {});

/// psi_system_roots filtered to genuine Steiner points: |phi| below
/// root_filter_tol for both equations and all three angles within
/// kAngleFilterTol of 2pi/3.
std::vector<KleinPoint> precise_roots(const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                                      const SolverConfig& cfg = {});

/// Whether all three angles at s are within tol of 2pi/3.
bool has_steiner_angles(const KleinPoint& s, const KleinPoint& a, const KleinPoint& b, const KleinPoint& c,
                        double tol = kAngleFilterTol);

}  // namespace hypersteiner
