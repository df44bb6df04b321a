#pragma once

// Orientation predicates with a floating-point filter and an exact rational
// fallback. Inputs are taken as exact binary values; the returned sign is the
// sign of the exact determinant.

namespace hypersteiner::predicates {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// +1 if (a, b, c) turn counter-clockwise, -1 if clockwise, 0 if collinear.
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);

/// +1 if d lies below the plane through a, b, c (oriented so that a, b, c
/// appear counter-clockwise from above), -1 if above, 0 if coplanar.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

}  // namespace hypersteiner::predicates
