#include "hypersteiner/klein.h"

#include <algorithm>
#include <complex>

namespace hypersteiner {

namespace {

constexpr double kMaxNormSq = (1.0 - kBoundaryEps) * (1.0 - kBoundaryEps);

// 1 - |v|^2, computed as (1 - |v|)(1 + |v|) to keep relative accuracy near the rim.
double one_minus_norm_sq(Vec2 v) {
    const double n = norm(v);
    return (1.0 - n) * (1.0 + n);
}

}  // namespace

bool inside_disk(Vec2 v) {
    const double n2 = dot(v, v);
    return std::isfinite(n2) && n2 < kMaxNormSq;
}

KleinPoint::KleinPoint(double x, double y) : v_{x, y} {
    if (!inside_disk(v_)) {
        throw std::domain_error("KleinPoint outside the open unit disk");
    }
}

double lorentz_inner(const KleinPoint& a, const KleinPoint& b) {
    return dot(a.vec(), b.vec()) - 1.0;
}

double hyp_distance(const KleinPoint& a, const KleinPoint& b) {
    // cosh d = -<a,b>/sqrt(<a,a><b,b>). Squaring and subtracting one gives
    //   sinh^2 d = (|b-a|^2 - (a x (b-a))^2) / ((1-|a|^2)(1-|b|^2)),
    // whose numerator has no cancellation when a and b are close.
    const Vec2 delta = b.vec() - a.vec();
    const double c = cross(a.vec(), delta);
    const double num = std::max(0.0, dot(delta, delta) - c * c);
    const double den = one_minus_norm_sq(a.vec()) * one_minus_norm_sq(b.vec());
    return std::asinh(std::sqrt(num / den));
}

double angle_from_sides(double adjacent1, double adjacent2, double opposite) {
    if (!(adjacent1 > 0.0) || !(adjacent2 > 0.0)) {
        throw std::domain_error("angle undefined at a degenerate vertex");
    }
    // Half-angle form of the hyperbolic law of cosines:
    //   tan^2(A/2) = sinh(s-b) sinh(s-c) / (sinh(s) sinh(s-a)).
    const double s = 0.5 * (adjacent1 + adjacent2 + opposite);
    const double sa = std::max(0.0, s - opposite);
    const double sb = std::max(0.0, s - adjacent1);
    const double sc = std::max(0.0, s - adjacent2);
    const double num = std::sinh(sb) * std::sinh(sc);
    const double den = std::sinh(s) * std::sinh(sa);
    return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

double angle_at(const KleinPoint& p, const KleinPoint& a, const KleinPoint& b) {
    if (a == p || b == p) {
        throw std::domain_error("angle_at: vertex coincides with an endpoint");
    }
    return angle_from_sides(hyp_distance(p, a), hyp_distance(p, b), hyp_distance(a, b));
}

Mat2 metric_tensor_at(const KleinPoint& z) {
    const double zz = z.norm_sq() - 1.0;
    const double a = -1.0 / zz;
    const double b = 1.0 / (zz * zz);
    const double xy = b * z.x() * z.y();
    return {{{a + b * z.x() * z.x(), xy}, {xy, a + b * z.y() * z.y()}}};
}

KleinPoint klein_from_poincare(Vec2 p) {
    const double n2 = dot(p, p);
    if (!(n2 < 1.0)) {
        throw std::domain_error("Poincare point outside the unit disk");
    }
    return KleinPoint((2.0 / (1.0 + n2)) * p);
}

Vec2 poincare_from_klein(const KleinPoint& k) {
    return (1.0 / (1.0 + std::sqrt(one_minus_norm_sq(k.vec())))) * k.vec();
}

double poincare_distance(Vec2 a, Vec2 b) {
    const double den = one_minus_norm_sq(a) * one_minus_norm_sq(b);
    return 2.0 * std::asinh(norm(b - a) / std::sqrt(den));
}

LorentzPoint lorentz_from_klein(const KleinPoint& z) {
    const double x0 = 1.0 / std::sqrt(one_minus_norm_sq(z.vec()));
    return {x0, x0 * z.x(), x0 * z.y()};
}

KleinPoint klein_from_lorentz(const LorentzPoint& p) {
    if (!(p.x0 > 0.0)) {
        throw std::domain_error("Lorentz point not on the upper sheet");
    }
    return KleinPoint(p.x1 / p.x0, p.x2 / p.x0);
}

double minkowski_dot(const LorentzPoint& a, const LorentzPoint& b) {
    return -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2;
}

double hyperboloid_distance(const LorentzPoint& a, const LorentzPoint& b) {
    return std::acosh(std::max(1.0, -minkowski_dot(a, b)));
}

bool is_lorentz(const LorentzMatrix& m, double tol) {
    constexpr std::array<double, 3> kSig{-1.0, 1.0, 1.0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += kSig[k] * m[k][i] * m[k][j];
            const double expected = i == j ? kSig[i] : 0.0;
            if (std::abs(s - expected) > tol * std::max(1.0, m[0][0] * m[0][0])) return false;
        }
    }
    return m[0][0] > 0.0;
}

LorentzPoint apply_lorentz(const LorentzMatrix& m, const LorentzPoint& p) {
    const std::array<double, 3> v{p.x0, p.x1, p.x2};
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return {r[0], r[1], r[2]};
}

KleinPoint apply_isometry(const KleinPoint& z, const LorentzMatrix& m) {
    if (!is_lorentz(m)) {
        throw std::invalid_argument("apply_isometry: matrix does not preserve the Lorentz form");
    }
    return klein_from_lorentz(apply_lorentz(m, lorentz_from_klein(z)));
}

LorentzMatrix lorentz_multiply(const LorentzMatrix& a, const LorentzMatrix& b) {
    LorentzMatrix r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

LorentzMatrix rotation_about_origin(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{{1.0, 0.0, 0.0}, {0.0, c, -s}, {0.0, s, c}}};
}

LorentzMatrix boost_to(const KleinPoint& target) {
    const LorentzPoint t = lorentz_from_klein(target);
    const double k = 1.0 / (1.0 + t.x0);
    return {{{t.x0, t.x1, t.x2},
             {t.x1, 1.0 + k * t.x1 * t.x1, k * t.x1 * t.x2},
             {t.x2, k * t.x1 * t.x2, 1.0 + k * t.x2 * t.x2}}};
}

UhpPoint uhp_from_klein(const KleinPoint& k) {
    // Cayley transform of the Poincare disk onto the upper half-plane.
    const Vec2 p = poincare_from_klein(k);
    const std::complex<double> z(p.x, p.y);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> w = i * (1.0 + z) / (1.0 - z);
    return {w.real(), w.imag()};
}

KleinPoint klein_from_uhp(const UhpPoint& h) {
    if (!(h.y > 0.0)) {
        throw std::domain_error("upper half-plane point needs y > 0");
    }
    const std::complex<double> w(h.x, h.y);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> z = (w - i) / (w + i);
    return klein_from_poincare({z.real(), z.imag()});
}

double uhp_distance(const UhpPoint& p, const UhpPoint& q) {
    // |log((A + B) / (A - B))| = 2 artanh(B / A).
    const double dx = q.x - p.x;
    const double a = std::hypot(dx, q.y + p.y);
    const double b = std::hypot(dx, q.y - p.y);
    return 2.0 * std::atanh(b / a);
}

double isoptic_uhp_eval(const UhpPoint& p, const UhpPoint& q, double alpha, const UhpPoint& s) {
    const double x1 = p.x, y1 = p.y, x2 = q.x, y2 = q.y, x = s.x, y = s.y;
    const double a1 = x1 - x, a2 = x2 - x;
    const double lhs = (a1 * a1 + y1 * y1 + y * y) * (a2 * a2 + y2 * y2 + y * y) -
                       2.0 * y * y * ((x1 - x2) * (x1 - x2) + y1 * y1 + y2 * y2);
    const double root = std::sqrt((a1 * a1 + (y1 - y) * (y1 - y)) * (a1 * a1 + (y1 + y) * (y1 + y)) *
                                  (a2 * a2 + (y2 - y) * (y2 - y)) * (a2 * a2 + (y2 + y) * (y2 + y)));
    return lhs - std::cos(alpha) * root;
}

}  // namespace hypersteiner
