#include "hypersteiner/predicates.h"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>

namespace hypersteiner::predicates {

namespace {

using Exact = boost::multiprecision::cpp_rational;

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
// Forward error bounds of the straightforward evaluations (Shewchuk 1997).
constexpr double kCcwBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kO3dBound = (7.0 + 56.0 * kEps) * kEps;

template <typename T>
int sign_of(const T& v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
    const Exact acx = Exact(ax) - Exact(cx), bcx = Exact(bx) - Exact(cx);
    const Exact acy = Exact(ay) - Exact(cy), bcy = Exact(by) - Exact(cy);
    return sign_of(Exact(acx * bcy - acy * bcx));
}

int orient3d_exact(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    const Exact adx = Exact(a.x) - Exact(d.x), ady = Exact(a.y) - Exact(d.y), adz = Exact(a.z) - Exact(d.z);
    const Exact bdx = Exact(b.x) - Exact(d.x), bdy = Exact(b.y) - Exact(d.y), bdz = Exact(b.z) - Exact(d.z);
    const Exact cdx = Exact(c.x) - Exact(d.x), cdy = Exact(c.y) - Exact(d.y), cdz = Exact(c.z) - Exact(d.z);
    const Exact det = adx * (bdy * cdz - bdz * cdy) + bdx * (cdy * adz - cdz * ady) + cdx * (ady * bdz - adz * bdy);
    return sign_of(det);
}

}  // namespace

int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
    const double detleft = (ax - cx) * (by - cy);
    const double detright = (ay - cy) * (bx - cx);
    const double det = detleft - detright;
    const double bound = kCcwBound * (std::abs(detleft) + std::abs(detright));
    if (det > bound || -det > bound) return det > 0 ? 1 : -1;
    return orient2d_exact(ax, ay, bx, by, cx, cy);
}

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    const double adx = a.x - d.x, ady = a.y - d.y, adz = a.z - d.z;
    const double bdx = b.x - d.x, bdy = b.y - d.y, bdz = b.z - d.z;
    const double cdx = c.x - d.x, cdy = c.y - d.y, cdz = c.z - d.z;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;

    const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                             (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                             (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
    const double bound = kO3dBound * permanent;
    if (det > bound || -det > bound) return det > 0 ? 1 : -1;
    return orient3d_exact(a, b, c, d);
}

}  // namespace hypersteiner::predicates
