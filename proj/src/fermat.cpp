#include "hypersteiner/fermat.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypersteiner {

void validate(const SolverConfig& cfg) {
    if (!(cfg.newton_tol > 0.0) || !(cfg.root_filter_tol > 0.0)) {
        throw std::invalid_argument("solver tolerances must be positive");
    }
    if (cfg.newton_max_iter < 1) throw std::invalid_argument("newton_max_iter must be positive");
    if (cfg.grid_n < 4) throw std::invalid_argument("grid_n must be at least 4");
}

const char* to_string(FstStatus s) {
    switch (s) {
        case FstStatus::Ok: return "ok";
        case FstStatus::NoFst: return "no_fst";
        case FstStatus::SolverFailure: return "solver_failure";
        case FstStatus::NumericalFailure: return "numerical_failure";
        case FstStatus::IterationFailure: return "iteration_failure";
    }
    return "unknown";
}

namespace {

// The Fermat point lies strictly inside the triangle; iterates are kept there.
bool strictly_inside(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
    const double o = cross(b - a, c - a) > 0 ? 1.0 : -1.0;
    return o * cross(b - a, p - a) > 0 && o * cross(c - b, p - b) > 0 && o * cross(a - c, p - c) > 0;
}

// With u = x - s, v = y - s and q = 1 - |s|^2:
//   A = <x,s><y,s> - <x,y><s,s> = q (u.v) + (u.s)(v.s)
//   B = <x,s>^2 - <x,x><s,s>    = q |u|^2 + (u.s)^2
//   C = <y,s>^2 - <y,y><s,s>    = q |v|^2 + (v.s)^2
// The right-hand sides vanish to second order as s approaches a terminal
// instead of cancelling to rounding noise.
struct Terms {
    double a = 0.0, b = 0.0, c = 0.0;
    Vec2 ga, gb, gc;
};

Terms terms(Vec2 x, Vec2 y, Vec2 s) {
    const Vec2 u = x - s, v = y - s;
    const double q = (1.0 - norm(s)) * (1.0 + norm(s));
    const double uv = dot(u, v), us = dot(u, s), vs = dot(v, s);
    const double uu = dot(u, u), vv = dot(v, v);
    Terms t;
    t.a = q * uv + us * vs;
    t.b = q * uu + us * us;
    t.c = q * vv + vs * vs;
    t.ga = (-2.0 * uv) * s + (-q) * (u + v) + vs * (u - s) + us * (v - s);
    t.gb = (-2.0 * uu) * s + (-2.0 * q) * u + (2.0 * us) * (u - s);
    t.gc = (-2.0 * vv) * s + (-2.0 * q) * v + (2.0 * vs) * (v - s);
    return t;
}

// cos(theta) - cos(alpha) and its gradient; NaN at a terminal.
double angle_residual(Vec2 x, Vec2 y, Vec2 s, double cos_alpha, Vec2* grad) {
    const Terms t = terms(x, y, s);
    const double bc = t.b * t.c;
    if (!(bc > 0.0)) return std::nan("");
    const double r = std::sqrt(bc);
    if (grad) {
        const Vec2 dbc = t.c * t.gb + t.b * t.gc;
        *grad = (1.0 / r) * t.ga - (t.a / (2.0 * r * bc)) * dbc;
    }
    return t.a / r - cos_alpha;
}

double psi_value(Vec2 x, Vec2 y, Vec2 s, double cos2, Vec2* grad, double* scale) {
    const Terms t = terms(x, y, s);
    if (grad) *grad = (2.0 * t.a) * t.ga - cos2 * (t.c * t.gb + t.b * t.gc);
    if (scale) *scale = t.a * t.a + cos2 * t.b * t.c;
    return t.a * t.a - cos2 * t.b * t.c;
}

bool solve2(const std::array<Vec2, 2>& rows, Vec2 rhs, Vec2& out) {
    const double det = cross(rows[0], rows[1]);
    if (!std::isfinite(det) || det == 0.0) return false;
    out = {(rhs.x * rows[1].y - rhs.y * rows[0].y) / det, (rows[0].x * rhs.y - rows[1].x * rhs.x) / det};
    return std::isfinite(out.x) && std::isfinite(out.y);
}

double diameter(Vec2 x, Vec2 y, Vec2 z) { return std::max({norm(x - y), norm(y - z), norm(z - x)}); }

// Residuals of cos(theta) cannot drop below the rounding of the differences
// x - s, which grows as the triangle shrinks.
double residual_tolerance(Vec2 x, Vec2 y, Vec2 z, const SolverConfig& cfg) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    return std::max(cfg.newton_tol, 1e3 * kEps / diameter(x, y, z));
}

// Damped Newton on the normalized system cos(theta_xy) = cos(theta_yz) = -1/2.
std::optional<Vec2> newton_simple(Vec2 x, Vec2 y, Vec2 z, Vec2 start, const SolverConfig& cfg) {
    const double ca = std::cos(kSteinerAngle);
    const double tol = residual_tolerance(x, y, z, cfg);
    const double max_step = 0.25 * diameter(x, y, z);
    const auto eval = [&](Vec2 s, std::array<Vec2, 2>* jac) {
        Vec2 g1, g2;
        const Vec2 r{angle_residual(x, y, s, ca, jac ? &g1 : nullptr), angle_residual(y, z, s, ca, jac ? &g2 : nullptr)};
        if (jac) *jac = {g1, g2};
        return r;
    };
    Vec2 s = start;
    std::array<Vec2, 2> jac;
    Vec2 r = eval(s, &jac);
    if (!std::isfinite(r.x) || !std::isfinite(r.y)) return std::nullopt;
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        const double f = dot(r, r);
        if (std::sqrt(f) < tol) return s;
        Vec2 step;
        if (!solve2(jac, -1.0 * r, step)) return std::nullopt;
        // Near a terminal the residuals vary on the scale of the distance to
        // it; a full step can jump out across a short side or toward another
        // terminal.
        const double cap = std::min(max_step, 0.5 * std::min({norm(s - x), norm(s - y), norm(s - z)}));
        const double step_len = norm(step);
        if (step_len > cap) step = (cap / step_len) * step;
        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k, t *= 0.5) {
            const Vec2 cand = s + t * step;
            if (cand.x == s.x && cand.y == s.y) break;
            if (!strictly_inside(x, y, z, cand)) continue;
            const Vec2 rc = eval(cand, nullptr);
            if (std::isfinite(rc.x) && std::isfinite(rc.y) && dot(rc, rc) <= (1.0 - 1e-4 * t) * f) {
                s = cand;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        r = eval(s, &jac);
    }
    if (std::hypot(r.x, r.y) < tol) return s;
    return std::nullopt;
}

double length_to(const KleinPoint& s, const KleinPoint& a, const KleinPoint& b, const KleinPoint& c) {
    return hyp_distance(s, a) + hyp_distance(s, b) + hyp_distance(s, c);
}

Fst3Solution make_solution(const KleinPoint& s, const KleinPoint& a, const KleinPoint& b, const KleinPoint& c) {
    const double len = length_to(s, a, b, c);
    return {s, len, len / triangle_mst_length(a, b, c)};
}

}  // namespace

double isoptic_phi(const KleinPoint& x, const KleinPoint& y, double alpha, const KleinPoint& s) {
    const Terms t = terms(x.vec(), y.vec(), s.vec());
    return t.a - std::cos(alpha) * std::sqrt(t.b * t.c);
}

double isoptic_psi(const KleinPoint& x, const KleinPoint& y, double alpha, const KleinPoint& s) {
    const double c = std::cos(alpha);
    return psi_value(x.vec(), y.vec(), s.vec(), c * c, nullptr, nullptr);
}

bool admits_fst(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c) {
    if (a == b || b == c || a == c) return false;
    const double ab = hyp_distance(a, b), bc = hyp_distance(b, c), ca = hyp_distance(c, a);
    const double limit = kSteinerAngle - kAngleGuard;
    return angle_from_sides(ab, ca, bc) < limit && angle_from_sides(ab, bc, ca) < limit &&
           angle_from_sides(bc, ca, ab) < limit;
}

double triangle_mst_length(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c) {
    std::array<double, 3> d{hyp_distance(a, b), hyp_distance(b, c), hyp_distance(c, a)};
    std::sort(d.begin(), d.end());
    return d[0] + d[1];
}

bool has_steiner_angles(const KleinPoint& s, const KleinPoint& a, const KleinPoint& b, const KleinPoint& c,
                        double tol) {
    if (s == a || s == b || s == c) return false;
    const double sa = hyp_distance(s, a), sb = hyp_distance(s, b), sc = hyp_distance(s, c);
    const double ab = hyp_distance(a, b), bc = hyp_distance(b, c), ca = hyp_distance(c, a);
    return std::abs(angle_from_sides(sa, sb, ab) - kSteinerAngle) <= tol &&
           std::abs(angle_from_sides(sb, sc, bc) - kSteinerAngle) <= tol &&
           std::abs(angle_from_sides(sc, sa, ca) - kSteinerAngle) <= tol;
}

std::vector<KleinPoint> psi_system_roots(const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                                         const SolverConfig& cfg) {
    validate(cfg);
    const double c = std::cos(kSteinerAngle);
    const double cos2 = c * c;
    const Vec2 px = x.vec(), py = y.vec(), pz = z.vec();
    const double x0 = std::min({px.x, py.x, pz.x}), x1 = std::max({px.x, py.x, pz.x});
    const double y0 = std::min({px.y, py.y, pz.y}), y1 = std::max({px.y, py.y, pz.y});
    const double h = diameter(px, py, pz);
    const double rel_tol = 1e2 * residual_tolerance(px, py, pz, cfg);

    std::vector<Vec2> roots;
    for (int i = 0; i < cfg.grid_n; ++i) {
        for (int j = 0; j < cfg.grid_n; ++j) {
            Vec2 s{x0 + (x1 - x0) * (i + 0.5) / cfg.grid_n, y0 + (y1 - y0) * (j + 0.5) / cfg.grid_n};
            if (!inside_disk(s)) continue;
            bool converged = false;
            for (int it = 0; it < cfg.newton_max_iter && !converged; ++it) {
                Vec2 g1, g2;
                const Vec2 r{psi_value(px, py, s, cos2, &g1, nullptr), psi_value(py, pz, s, cos2, &g2, nullptr)};
                Vec2 step;
                if (!solve2({g1, g2}, -1.0 * r, step)) break;
                s = s + step;
                if (!inside_disk(s)) break;
                converged = norm(step) <= 1e-13 * h;
            }
            if (!converged) {
                // Quadratic convergence stalls at the rounding floor.
                Vec2 g1, g2;
                const Vec2 r{psi_value(px, py, s, cos2, &g1, nullptr), psi_value(py, pz, s, cos2, &g2, nullptr)};
                Vec2 step;
                converged = inside_disk(s) && solve2({g1, g2}, -1.0 * r, step) && norm(step) <= 1e-9 * h;
            }
            if (!converged) continue;
            double m1 = 0.0, m2 = 0.0;
            const double r1 = psi_value(px, py, s, cos2, nullptr, &m1);
            const double r2 = psi_value(py, pz, s, cos2, nullptr, &m2);
            if (std::abs(r1) > rel_tol * m1 || std::abs(r2) > rel_tol * m2) continue;
            const bool known = std::any_of(roots.begin(), roots.end(), [&](Vec2 r) { return norm(r - s) < 1e-9; });
            if (!known) roots.push_back(s);
        }
    }
    std::sort(roots.begin(), roots.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<KleinPoint> out;
    out.reserve(roots.size());
    for (Vec2 r : roots) out.emplace_back(r);
    return out;
}

std::vector<KleinPoint> precise_roots(const KleinPoint& x, const KleinPoint& y, const KleinPoint& z,
                                      const SolverConfig& cfg) {
    std::vector<KleinPoint> out;
    for (const KleinPoint& s : psi_system_roots(x, y, z, cfg)) {
        if (s == x || s == y || s == z) continue;
        if (std::abs(isoptic_phi(x, y, kSteinerAngle, s)) >= cfg.root_filter_tol) continue;
        if (std::abs(isoptic_phi(y, z, kSteinerAngle, s)) >= cfg.root_filter_tol) continue;
        if (!has_steiner_angles(s, x, y, z)) continue;
        out.push_back(s);
    }
    return out;
}

Fst3Result fermat_point(const KleinPoint& a, const KleinPoint& b, const KleinPoint& c, const SolverConfig& cfg,
                        std::optional<KleinPoint> start) {
    validate(cfg);
    if (!admits_fst(a, b, c)) return {FstStatus::NoFst, std::nullopt};

    if (start && strictly_inside(a.vec(), b.vec(), c.vec(), start->vec())) {
        const auto s = newton_simple(a.vec(), b.vec(), c.vec(), start->vec(), cfg);
        if (s) {
            const KleinPoint p(*s);
            if (has_steiner_angles(p, a, b, c)) return {FstStatus::Ok, make_solution(p, a, b, c)};
        }
    }

    // Newton is singular exactly at a terminal, so each start is moved 1% of
    // the way toward the centroid.
    const Vec2 centroid = (1.0 / 3.0) * (a.vec() + b.vec() + c.vec());
    for (const KleinPoint* t : {&a, &c}) {
        const Vec2 start = t->vec() + 0.01 * (centroid - t->vec());
        const auto s = newton_simple(a.vec(), b.vec(), c.vec(), start, cfg);
        if (!s) continue;
        const KleinPoint p(*s);
        if (has_steiner_angles(p, a, b, c)) return {FstStatus::Ok, make_solution(p, a, b, c)};
    }
    if (cfg.mode == SolverMode::Simple) return {FstStatus::SolverFailure, std::nullopt};

    std::optional<Fst3Solution> best;
    for (const KleinPoint& p : precise_roots(a, b, c, cfg)) {
        const Fst3Solution sol = make_solution(p, a, b, c);
        if (!best || sol.length < best->length) best = sol;
    }
    if (!best) return {FstStatus::NumericalFailure, std::nullopt};
    return {FstStatus::Ok, best};
}

}  // namespace hypersteiner
