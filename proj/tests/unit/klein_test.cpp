#include "hypersteiner/klein.h"

#include "test_util.h"

#include <gtest/gtest.h>

#include <numbers>

using namespace hypersteiner;

namespace {

constexpr double kPi = std::numbers::pi;

TEST(KleinPoint, RejectsBoundary) {
    EXPECT_THROW(KleinPoint(1.0, 0.0), std::domain_error);
    EXPECT_THROW(KleinPoint(0.6, 0.8), std::domain_error);
    EXPECT_THROW(KleinPoint(1.0 - 1e-10, 0.0), std::domain_error);
    EXPECT_THROW(KleinPoint(std::nan(""), 0.0), std::domain_error);
    EXPECT_NO_THROW(KleinPoint(1.0 - 1e-8, 0.0));
}

TEST(LorentzInner, Examples) {
    EXPECT_DOUBLE_EQ(lorentz_inner({0, 0}, {0, 0}), -1.0);
    EXPECT_DOUBLE_EQ(lorentz_inner({0.5, 0}, {-0.5, 0}), -1.25);
    EXPECT_NEAR(lorentz_inner({0.3, 0.4}, {0.3, 0.4}), -0.75, 1e-15);
}

TEST(HypDistance, Examples) {
    EXPECT_EQ(hyp_distance({0, 0}, {0, 0}), 0.0);
    EXPECT_NEAR(hyp_distance({0, 0}, {std::tanh(1.0), 0}), 1.0, 1e-14);
    EXPECT_NEAR(hyp_distance({0.5, 0}, {-0.5, 0}), std::log(3.0), 1e-14);
}

TEST(HypDistance, MatchesArccoshForm) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const KleinPoint a = testutil::random_point(rng, 0.9), b = testutil::random_point(rng, 0.9);
        const double arg = -lorentz_inner(a, b) / std::sqrt(lorentz_inner(a, a) * lorentz_inner(b, b));
        EXPECT_NEAR(hyp_distance(a, b), std::acosh(std::max(1.0, arg)), 1e-7);
    }
}

TEST(HypDistance, TriangleInequality) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const KleinPoint a = testutil::random_point(rng), b = testutil::random_point(rng), c = testutil::random_point(rng);
        EXPECT_LE(hyp_distance(a, c), hyp_distance(a, b) + hyp_distance(b, c) + 1e-10);
        EXPECT_DOUBLE_EQ(hyp_distance(a, b), hyp_distance(b, a));
    }
}

TEST(AngleAt, Examples) {
    EXPECT_NEAR(angle_at({0, 0}, {0.3, 0}, {0, 0.3}), kPi / 2, 1e-14);
    EXPECT_NEAR(angle_at({0, 0}, {0.3, 0}, {0.6, 0}), 0.0, 1e-7);
    EXPECT_NEAR(angle_at({0, 0}, {0.3, 0}, {-0.4, 0}), kPi, 1e-7);
    EXPECT_THROW(angle_at({0.1, 0.1}, {0.1, 0.1}, {0.2, 0}), std::domain_error);
}

TEST(AngleAt, ConformalAtOrigin) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const KleinPoint a = testutil::random_point(rng), b = testutil::random_point(rng);
        const double euclid = std::acos(std::clamp(dot(a.vec(), b.vec()) / (norm(a.vec()) * norm(b.vec())), -1.0, 1.0));
        EXPECT_NEAR(angle_at({0, 0}, a, b), euclid, 1e-7 + 1e-10);
        EXPECT_NEAR(angle_at({0, 0}, a, b), std::atan2(std::abs(cross(a.vec(), b.vec())), dot(a.vec(), b.vec())), 1e-10);
    }
}

TEST(AngleAt, AngleSumDeficit) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const KleinPoint a = testutil::random_point(rng), b = testutil::random_point(rng), c = testutil::random_point(rng);
        EXPECT_LT(angle_at(a, b, c) + angle_at(b, c, a) + angle_at(c, a, b), kPi);
    }
}

TEST(AngleAt, MatchesMetricTensorAngle) {
    // The angle between Klein tangent directions measured with g(z).
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const KleinPoint p = testutil::random_point(rng, 0.9), a = testutil::random_point(rng, 0.9),
                         b = testutil::random_point(rng, 0.9);
        const Mat2 g = metric_tensor_at(p);
        const auto form = [&](Vec2 u, Vec2 v) {
            return u.x * (g[0][0] * v.x + g[0][1] * v.y) + u.y * (g[1][0] * v.x + g[1][1] * v.y);
        };
        const Vec2 u = a.vec() - p.vec(), v = b.vec() - p.vec();
        const double cosine = form(u, v) / std::sqrt(form(u, u) * form(v, v));
        EXPECT_NEAR(angle_at(p, a, b), std::acos(std::clamp(cosine, -1.0, 1.0)), 1e-7);
    }
}

TEST(MetricTensor, Examples) {
    const Mat2 id = metric_tensor_at({0, 0});
    EXPECT_EQ(id[0][0], 1.0);
    EXPECT_EQ(id[1][1], 1.0);
    EXPECT_EQ(id[0][1], 0.0);
    EXPECT_EQ(id[1][0], 0.0);

    // At (0.5, 0): <z,z> = -0.75, so g = (4/3) I + (16/9) zz^T.
    const Mat2 g = metric_tensor_at({0.5, 0});
    EXPECT_NEAR(g[0][0], 4.0 / 3.0 + 4.0 / 9.0, 1e-14);
    EXPECT_NEAR(g[1][1], 4.0 / 3.0, 1e-14);
    EXPECT_EQ(g[0][1], 0.0);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const Mat2 m = metric_tensor_at(testutil::random_point(rng));
        EXPECT_EQ(m[0][1], m[1][0]);
        EXPECT_GT(m[0][0], 0.0);
        EXPECT_GT(m[0][0] * m[1][1] - m[0][1] * m[1][0], 0.0);
    }
}

TEST(Poincare, Examples) {
    EXPECT_EQ(klein_from_poincare({0, 0}), KleinPoint(0, 0));
    EXPECT_NEAR(klein_from_poincare({0.5, 0}).x(), 0.8, 1e-15);
    const Vec2 back = poincare_from_klein(klein_from_poincare({0.31, -0.7}));
    EXPECT_NEAR(back.x, 0.31, 1e-12);
    EXPECT_NEAR(back.y, -0.7, 1e-12);
    EXPECT_THROW(klein_from_poincare({1.0, 0.0}), std::domain_error);
}

TEST(Poincare, DistancePreserved) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const KleinPoint a = testutil::random_point(rng), b = testutil::random_point(rng);
        EXPECT_NEAR(poincare_distance(poincare_from_klein(a), poincare_from_klein(b)), hyp_distance(a, b), 1e-9);
    }
}

TEST(Lorentz, Examples) {
    const LorentzPoint o = lorentz_from_klein({0, 0});
    EXPECT_EQ(o.x0, 1.0);
    EXPECT_EQ(o.x1, 0.0);
    const LorentzPoint p = lorentz_from_klein({0.6, 0});
    EXPECT_NEAR(p.x0, 1.25, 1e-15);
    EXPECT_NEAR(p.x1, 0.75, 1e-15);
    EXPECT_EQ(p.x2, 0.0);
}

TEST(Lorentz, RoundTripAndDistance) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const KleinPoint a = testutil::random_point(rng, 0.9), b = testutil::random_point(rng, 0.9);
        const LorentzPoint la = lorentz_from_klein(a), lb = lorentz_from_klein(b);
        EXPECT_NEAR(-minkowski_dot(la, la), 1.0, 1e-12);
        const KleinPoint back = klein_from_lorentz(la);
        EXPECT_NEAR(back.x(), a.x(), 1e-12);
        EXPECT_NEAR(back.y(), a.y(), 1e-12);
        EXPECT_NEAR(hyperboloid_distance(la, lb), hyp_distance(a, b), 1e-10);
    }
}

TEST(Isometry, Examples) {
    const LorentzMatrix id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    EXPECT_EQ(apply_isometry({0.3, -0.2}, id), KleinPoint(0.3, -0.2));
    const KleinPoint r = apply_isometry({0.3, 0}, rotation_about_origin(kPi / 2));
    EXPECT_NEAR(r.x(), 0.0, 1e-15);
    EXPECT_NEAR(r.y(), 0.3, 1e-15);
    const KleinPoint moved = apply_isometry({0, 0}, boost_to({0.5, 0}));
    EXPECT_NEAR(moved.x(), 0.5, 1e-15);
    EXPECT_NEAR(moved.y(), 0.0, 1e-15);

    LorentzMatrix bad = id;
    bad[1][1] = 2.0;
    EXPECT_THROW(apply_isometry({0, 0}, bad), std::invalid_argument);
}

TEST(Isometry, PreservesDistancesAndAngles) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const LorentzMatrix m = testutil::random_isometry(rng);
        ASSERT_TRUE(is_lorentz(m));
        const KleinPoint a = testutil::random_point(rng, 0.8), b = testutil::random_point(rng, 0.8),
                         c = testutil::random_point(rng, 0.8);
        const KleinPoint ma = apply_isometry(a, m), mb = apply_isometry(b, m), mc = apply_isometry(c, m);
        EXPECT_NEAR(hyp_distance(ma, mb), hyp_distance(a, b), 1e-9);
        EXPECT_NEAR(angle_at(ma, mb, mc), angle_at(a, b, c), 1e-9);
    }
}

TEST(UpperHalfPlane, DistanceAgreesWithKlein) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const KleinPoint a = testutil::random_point(rng, 0.9), b = testutil::random_point(rng, 0.9);
        EXPECT_NEAR(uhp_distance(uhp_from_klein(a), uhp_from_klein(b)), hyp_distance(a, b), 1e-9);
        const KleinPoint back = klein_from_uhp(uhp_from_klein(a));
        EXPECT_NEAR(back.x(), a.x(), 1e-12);
        EXPECT_NEAR(back.y(), a.y(), 1e-12);
    }
    // The origin maps to i.
    const UhpPoint i = uhp_from_klein({0, 0});
    EXPECT_NEAR(i.x, 0.0, 1e-15);
    EXPECT_NEAR(i.y, 1.0, 1e-15);
}

double uhp_angle(const UhpPoint& s, const UhpPoint& p, const UhpPoint& q) {
    return angle_from_sides(uhp_distance(s, p), uhp_distance(s, q), uhp_distance(p, q));
}

TEST(IsopticUhp, VanishesAtMeasuredAngle) {
    const UhpPoint p{-1, 1}, q{1, 1};
    for (double y : {0.3, 0.8, 1.7, 2.5}) {
        const UhpPoint s{0, y};
        EXPECT_NEAR(isoptic_uhp_eval(p, q, uhp_angle(s, p, q), s), 0.0, 1e-9) << y;
    }
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.2, 2.0);
    for (int i = 0; i < 100; ++i) {
        const UhpPoint a{ux(rng), uy(rng)}, b{ux(rng), uy(rng)}, s{ux(rng), uy(rng)};
        const double alpha = uhp_angle(s, a, b);
        EXPECT_NEAR(isoptic_uhp_eval(a, b, alpha, s), 0.0, 1e-9);
        // Dilations are isometries of the upper half-plane.
        const double k = 1.7;
        EXPECT_NEAR(isoptic_uhp_eval({k * a.x, k * a.y}, {k * b.x, k * b.y}, alpha, {k * s.x, k * s.y}), 0.0, 1e-8);
        EXPECT_GT(std::abs(isoptic_uhp_eval(a, b, alpha > 1.0 ? alpha - 0.5 : alpha + 0.5, s)), 1e-6);
    }
}

}  // namespace
