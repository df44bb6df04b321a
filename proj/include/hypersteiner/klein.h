#pragma once

// Hyperbolic plane primitives in the Klein-Beltrami disk, plus the bridges to
// the Poincare disk, the upper half-plane and the hyperboloid (Lorentz) model.

#include <array>
#include <cmath>
#include <stdexcept>

namespace hypersteiner {

/// Points with Euclidean norm >= 1 - kBoundaryEps are rejected.
inline constexpr double kBoundaryEps = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Whether (x, y) is far enough inside the unit disk to be a KleinPoint.
bool inside_disk(Vec2 v);

/// A point of the open unit disk, in Klein-Beltrami coordinates.
class KleinPoint {
public:
    KleinPoint() = default;
    /// Throws std::domain_error if the point is not strictly inside the disk.
    KleinPoint(double x, double y);
    explicit KleinPoint(Vec2 v) : KleinPoint(v.x, v.y) {}

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    Vec2 vec() const { return v_; }
    double norm_sq() const { return dot(v_, v_); }

    friend bool operator==(const KleinPoint&, const KleinPoint&) = default;

private:
    Vec2 v_;
};

struct UhpPoint {
    double x = 0.0;
    double y = 1.0;
};

/// Point of the upper sheet of the hyperboloid x0^2 - x1^2 - x2^2 = 1.
struct LorentzPoint {
    double x0 = 1.0;
    double x1 = 0.0;
    double x2 = 0.0;
};

/// 3x3 matrix acting on (x0, x1, x2); row-major.
using LorentzMatrix = std::array<std::array<double, 3>, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Homogeneous Lorentzian product of two Klein points: a.b - 1.
double lorentz_inner(const KleinPoint& a, const KleinPoint& b);

/// Geodesic distance. Evaluated through sinh(d), which is free of the
/// cancellation arccosh suffers for nearby points.
double hyp_distance(const KleinPoint& a, const KleinPoint& b);

/// Inner angle at p of the geodesic triangle (p, a, b), in [0, pi].
/// Throws std::domain_error if a or b coincides with p.
double angle_at(const KleinPoint& p, const KleinPoint& a, const KleinPoint& b);

/// Angle at the vertex opposite side `opposite`, from the three side lengths.
double angle_from_sides(double adjacent1, double adjacent2, double opposite);

Mat2 metric_tensor_at(const KleinPoint& z);

KleinPoint klein_from_poincare(Vec2 p);
Vec2 poincare_from_klein(const KleinPoint& k);
double poincare_distance(Vec2 a, Vec2 b);

LorentzPoint lorentz_from_klein(const KleinPoint& z);
KleinPoint klein_from_lorentz(const LorentzPoint& p);
/// Minkowski form -a0 b0 + a1 b1 + a2 b2.
double minkowski_dot(const LorentzPoint& a, const LorentzPoint& b);
double hyperboloid_distance(const LorentzPoint& a, const LorentzPoint& b);

bool is_lorentz(const LorentzMatrix& m, double tol = 1e-10);
LorentzPoint apply_lorentz(const LorentzMatrix& m, const LorentzPoint& p);
/// Throws std::invalid_argument if `m` is not an orthochronous Lorentz matrix.
KleinPoint apply_isometry(const KleinPoint& z, const LorentzMatrix& m);
LorentzMatrix lorentz_multiply(const LorentzMatrix& a, const LorentzMatrix& b);
LorentzMatrix rotation_about_origin(double theta);
/// The boost along the geodesic through the origin that maps the origin to `target`.
LorentzMatrix boost_to(const KleinPoint& target);

UhpPoint uhp_from_klein(const KleinPoint& k);
KleinPoint klein_from_uhp(const UhpPoint& h);
double uhp_distance(const UhpPoint& p, const UhpPoint& q);

/// Isoptic residual in the upper half-plane: zero iff the geodesics from s to
/// p and q meet at angle alpha.
double isoptic_uhp_eval(const UhpPoint& p, const UhpPoint& q, double alpha, const UhpPoint& s);

}  // namespace hypersteiner
