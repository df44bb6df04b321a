#include "hypersteiner/fst4.h"

#include "hypersteiner/delaunay.h"

#include <algorithm>
#include <cmath>

namespace hypersteiner {

const char* to_string(Fst4Topology t) { return t == Fst4Topology::WX_YZ ? "wx_yz" : "wy_xz"; }

std::array<std::array<int, 2>, 2> pairs_of(Fst4Topology t) {
    if (t == Fst4Topology::WX_YZ) return {{{0, 1}, {2, 3}}};
    return {{{0, 2}, {1, 3}}};
}

std::optional<KleinPoint> point_on_isoptic(const KleinPoint& a, const KleinPoint& b, double alpha, Vec2 side) {
    const Vec2 m = 0.5 * (a.vec() + b.vec());
    Vec2 n{-(b.y() - a.y()), b.x() - a.x()};
    if (dot(n, side - m) < 0) n = -1.0 * n;
    n = (1.0 / norm(n)) * n;
    // largest t keeping m + t n inside the disk
    const double p = dot(m, n), q = dot(m, m) - (1.0 - kBoundaryEps);
    const double t_max = -p + std::sqrt(p * p - q);
    const auto at = [&](double t) { return m + t * n; };
    // The angle is pi on the chord and tends to 0 toward the boundary.
    double lo = 0.0, hi = t_max * (1.0 - 1e-9);
    if (!inside_disk(at(hi)) || angle_at(KleinPoint(at(hi)), a, b) >= alpha) return std::nullopt;
    for (int i = 0; i < 100 && hi - lo > 1e-15 * t_max; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == 0.0) break;
        (angle_at(KleinPoint(at(mid)), a, b) > alpha ? lo : hi) = mid;
    }
    return KleinPoint(at(0.5 * (lo + hi)));
}

namespace {

double tree_length(const KleinPoint& p1, const KleinPoint& p2, const KleinPoint& s1, const KleinPoint& s2,
                   const KleinPoint& p3, const KleinPoint& p4) {
    return hyp_distance(p1, s1) + hyp_distance(p2, s1) + hyp_distance(s1, s2) + hyp_distance(s2, p3) +
           hyp_distance(s2, p4);
}

double max_angle(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c) {
    return std::max({angle_at(a, b, c), angle_at(b, a, c), angle_at(c, a, b)});
}

// A subproblem failing this close to 2pi/3, or on a sliver triangle, means
// a Steiner point is merging with a terminal or with the other Steiner point:
// the full topology is collapsing and the solver is ill-conditioned there.
constexpr double kCollapseGap = 1e-3;
constexpr double kCollapseSliver = 1e-3;

FstStatus failure_status(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c, FstStatus s) {
    if (s == FstStatus::NoFst) return s;
    const double ab = hyp_distance(a, b), bc = hyp_distance(b, c), ca = hyp_distance(c, a);
    const bool sliver = std::min({ab, bc, ca}) < kCollapseSliver * std::max({ab, bc, ca});
    if (sliver || max_angle(a, b, c) > kSteinerAngle - kCollapseGap) return FstStatus::NoFst;
    return s;
}

}  // namespace

Fst4Result fst4_iterate(const KleinPoint& w, const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                        Fst4Topology topo, const SolverConfig& cfg, const Fst4Options& opts,
                        std::vector<double>* sweep_lengths) {
    const std::array<const KleinPoint*, 4> pts{&w, &x, &y, &z};
    const auto pairs = pairs_of(topo);
    const KleinPoint& p1 = *pts[pairs[0][0]];
    const KleinPoint& p2 = *pts[pairs[0][1]];
    const KleinPoint& p3 = *pts[pairs[1][0]];
    const KleinPoint& p4 = *pts[pairs[1][1]];

    // Seed on the isoptic of the first pair: the Fermat point of the pair and
    // the midpoint of the other pair, else of the pair and either other
    // terminal, else a bisected isoptic point; the first one that makes the
    // opening subproblem admissible.
    const KleinPoint mid(0.5 * (p3.vec() + p4.vec()));
    std::optional<KleinPoint> seed;
    for (const KleinPoint* third : {&mid, &p3, &p4}) {
        if (!admits_fst(p1, p2, *third)) continue;
        const auto r = fermat_point(p1, p2, *third, cfg);
        if (r.ok() && admits_fst(p3, p4, r.solution->steiner)) {
            seed = r.solution->steiner;
            break;
        }
    }
    if (!seed) seed = point_on_isoptic(p1, p2, kSteinerAngle, mid.vec());
    if (!seed) return {FstStatus::NoFst, std::nullopt};

    KleinPoint s1 = *seed;
    std::optional<KleinPoint> s2;
    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        // each subproblem is warm-started from the previous sweep's point
        const auto r2 = fermat_point(p3, p4, s1, cfg, s2);
        if (!r2.ok()) return {failure_status(p3, p4, s1, r2.status), std::nullopt};
        const auto r1 = fermat_point(p1, p2, r2.solution->steiner, cfg, s1);
        if (!r1.ok()) return {failure_status(p1, p2, r2.solution->steiner, r1.status), std::nullopt};

        const KleinPoint n1 = r1.solution->steiner, n2 = r2.solution->steiner;
        const double moved = std::max(hyp_distance(n1, s1), s2 ? hyp_distance(n2, *s2) : INFINITY);
        s1 = n1;
        s2 = n2;
        const double length = tree_length(p1, p2, s1, *s2, p3, p4);
        if (sweep_lengths) sweep_lengths->push_back(length);
        if (moved > opts.iter_tol) continue;

        if (!has_steiner_angles(s1, p1, p2, *s2) || !has_steiner_angles(*s2, p3, p4, s1)) {
            return {FstStatus::NumericalFailure, std::nullopt};
        }
        if (length > mst_full({w, x, y, z}).total_length()) return {FstStatus::NoFst, std::nullopt};
        return {FstStatus::Ok, Fst4Solution{topo, s1, *s2, length, sweep}};
    }
    return {FstStatus::IterationFailure, std::nullopt};
}

Fst4Result fst4_best(const KleinPoint& w, const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                     const SolverConfig& cfg, const Fst4Options& opts) {
    const Fst4Result a = fst4_iterate(w, x, y, z, Fst4Topology::WX_YZ, cfg, opts);
    const Fst4Result b = fst4_iterate(w, x, y, z, Fst4Topology::WY_XZ, cfg, opts);
    if (a.ok() && b.ok()) {
        const double la = a.solution->length, lb = b.solution->length;
        return lb < la - 1e-12 * la ? b : a;
    }
    if (a.ok()) return a;
    if (b.ok()) return b;
    if (a.status == FstStatus::NoFst || b.status == FstStatus::NoFst) return {FstStatus::NoFst, std::nullopt};
    if (a.status == FstStatus::IterationFailure || b.status == FstStatus::IterationFailure) {
        return {FstStatus::IterationFailure, std::nullopt};
    }
    return a;
}

}  // namespace hypersteiner
