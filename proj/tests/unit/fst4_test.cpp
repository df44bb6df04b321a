#include "hypersteiner/delaunay.h"
#include "hypersteiner/fst4.h"
#include "oracles.h"
#include "test_util.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hypersteiner;
using testutil::random_point;

namespace {

using Quad = std::array<KleinPoint, 4>;

Quad random_quad(std::mt19937_64& rng, double spread = 0.2) {
    const auto c = random_point(rng, 0.8);
    std::normal_distribution<double> nd(0.0, spread);
    Quad q;
    for (auto& p : q) {
        while (true) {
            const Vec2 v{c.x() + nd(rng), c.y() + nd(rng)};
            if (norm(v) < 0.97) {
                p = KleinPoint(v);
                break;
            }
        }
    }
    return q;
}

double brute_for(const Quad& q, Fst4Topology t, int grid = 14) {
    const auto pr = pairs_of(t);
    return oracle::brute_fst4(q[pr[0][0]], q[pr[0][1]], q[pr[1][0]], q[pr[1][1]], grid);
}

Fst4Result best(const Quad& q) { return fst4_best(q[0], q[1], q[2], q[3]); }

}  // namespace

TEST(Fst4, SymmetricSquare) {
    const double t = 0.6;
    // adjacent corners pair up under both topologies
    const Quad q{KleinPoint(t, 0), KleinPoint(0, t), KleinPoint(0, -t), KleinPoint(-t, 0)};
    const auto a = fst4_iterate(q[0], q[1], q[2], q[3], Fst4Topology::WX_YZ);
    const auto b = fst4_iterate(q[0], q[1], q[2], q[3], Fst4Topology::WY_XZ);
    ASSERT_TRUE(a.ok());
    ASSERT_TRUE(b.ok());
    // WX_YZ pairs (t,0),(0,t): both Steiner points on the mirror line y = x
    EXPECT_NEAR(a.solution->steiner1.x(), a.solution->steiner1.y(), 1e-9);
    EXPECT_NEAR(a.solution->steiner2.x(), a.solution->steiner2.y(), 1e-9);
    EXPECT_NEAR(a.solution->steiner1.x(), -a.solution->steiner2.x(), 1e-9);
    EXPECT_NEAR(b.solution->steiner1.x(), -b.solution->steiner1.y(), 1e-9);
    EXPECT_NEAR(a.solution->length, b.solution->length, 1e-9);
    const auto r = best(q);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.solution->topology, Fst4Topology::WX_YZ);
    EXPECT_LT(r.solution->length, mst_full({q.begin(), q.end()}).total_length());
}

TEST(Fst4, MatchesBruteForce) {
    std::mt19937_64 rng(31);
    int checked = 0;
    while (checked < 15) {
        const auto q = random_quad(rng);
        for (auto t : {Fst4Topology::WX_YZ, Fst4Topology::WY_XZ}) {
            const auto r = fst4_iterate(q[0], q[1], q[2], q[3], t);
            if (!r.ok()) continue;
            ++checked;
            const double ref = brute_for(q, t);
            EXPECT_LT(std::abs(r.solution->length - ref), 1e-4 * ref);
            EXPECT_LE(r.solution->length, ref * (1 + 1e-12));
        }
    }
}

TEST(Fst4, SolutionInvariants) {
    std::mt19937_64 rng(32);
    int ok = 0;
    for (int i = 0; i < 300; ++i) {
        const auto q = random_quad(rng);
        for (auto t : {Fst4Topology::WX_YZ, Fst4Topology::WY_XZ}) {
            std::vector<double> lengths;
            const auto r = fst4_iterate(q[0], q[1], q[2], q[3], t, {}, {}, &lengths);
            for (std::size_t k = 1; k < lengths.size(); ++k) EXPECT_LE(lengths[k], lengths[k - 1] + 1e-12);
            if (!r.ok()) continue;
            ++ok;
            const auto& s = *r.solution;
            const auto pr = pairs_of(t);
            EXPECT_TRUE(has_steiner_angles(s.steiner1, q[pr[0][0]], q[pr[0][1]], s.steiner2));
            EXPECT_TRUE(has_steiner_angles(s.steiner2, q[pr[1][0]], q[pr[1][1]], s.steiner1));
            const double len = hyp_distance(q[pr[0][0]], s.steiner1) + hyp_distance(q[pr[0][1]], s.steiner1) +
                               hyp_distance(s.steiner1, s.steiner2) + hyp_distance(s.steiner2, q[pr[1][0]]) +
                               hyp_distance(s.steiner2, q[pr[1][1]]);
            EXPECT_NEAR(s.length, len, 1e-12 * len);
            EXPECT_LE(s.length, mst_full({q.begin(), q.end()}).total_length());
            EXPECT_LE(s.iterations, 100);
        }
    }
    EXPECT_GT(ok, 30);
}

TEST(Fst4, BestIsLocalNotGlobal) {
    // A converged full topology is a critical point for its topology only:
    // here a three-terminal tree plus one edge is shorter, yet fst4_best
    // still returns the full tree (which beats the MST).
    const Quad q{KleinPoint(-0.1563, -0.6597), KleinPoint(0.4536, -0.6839), KleinPoint(0.0885, -0.8458),
                KleinPoint(-0.0038, -0.5722)};
    const auto r = best(q);
    ASSERT_TRUE(r.ok());
    EXPECT_LT(r.solution->length, mst_full({q.begin(), q.end()}).total_length());
    double best_completion = INFINITY;
    for (int drop = 0; drop < 4; ++drop) {
        std::vector<KleinPoint> tri;
        for (int k = 0; k < 4; ++k)
            if (k != drop) tri.push_back(q[k]);
        const auto f = fermat_point(tri[0], tri[1], tri[2], SolverConfig{SolverMode::Precise});
        if (!f.ok()) continue;
        double attach = hyp_distance(q[drop], f.solution->steiner);
        for (const auto& p : tri) attach = std::min(attach, hyp_distance(q[drop], p));
        best_completion = std::min(best_completion, f.solution->length + attach);
    }
    EXPECT_LT(best_completion, r.solution->length);
}

TEST(Fst4, TerminalInsideTriangleIsNoFst) {
    const double r = 0.5;
    Quad q{KleinPoint(0.0, 0.0)};
    for (int k = 0; k < 3; ++k) {
        const double a = 2 * std::numbers::pi * k / 3;
        q[k + 1] = KleinPoint(r * std::cos(a), r * std::sin(a));
    }
    for (auto t : {Fst4Topology::WX_YZ, Fst4Topology::WY_XZ})
        EXPECT_EQ(fst4_iterate(q[0], q[1], q[2], q[3], t).status, FstStatus::NoFst);
    EXPECT_EQ(best(q).status, FstStatus::NoFst);
}

TEST(Fst4, ElongatedQuadPairsNearNeighbours) {
    // Two tight pairs far apart: (w, y) on the left, (x, z) on the right.
    const Quad q{KleinPoint(-0.6, 0.05), KleinPoint(0.6, 0.05), KleinPoint(-0.6, -0.05), KleinPoint(0.6, -0.05)};
    const auto r = best(q);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.solution->topology, Fst4Topology::WY_XZ);
    EXPECT_LT(brute_for(q, Fst4Topology::WY_XZ), brute_for(q, Fst4Topology::WX_YZ));
    EXPECT_NEAR(r.solution->length, brute_for(q, Fst4Topology::WY_XZ), 1e-4 * r.solution->length);
}

TEST(Fst4, CyclicRelabelingGivesSameTree) {
    // Terminals c0..c3 in cyclic order are passed as (c0, c1, c3, c2), so w's
    // neighbours are x and y and both pairings are non-crossing. Rotating the
    // cycle permutes the two pairings.
    std::mt19937_64 rng(34);
    int compared = 0;
    for (int i = 0; i < 200; ++i) {
        auto q = random_quad(rng);
        Vec2 centroid{0, 0};
        for (const auto& p : q) centroid = centroid + 0.25 * p.vec();
        std::sort(q.begin(), q.end(), [&](const KleinPoint& a, const KleinPoint& b) {
            return std::atan2(a.y() - centroid.y, a.x() - centroid.x) < std::atan2(b.y() - centroid.y, b.x() - centroid.x);
        });
        const auto r = fst4_best(q[0], q[1], q[3], q[2]);
        const auto s = fst4_best(q[1], q[2], q[0], q[3]);
        ASSERT_EQ(r.ok(), s.ok()) << i << " " << to_string(r.status) << " " << to_string(s.status);
        if (!r.ok()) continue;
        ++compared;
        EXPECT_NEAR(r.solution->length, s.solution->length, 1e-9 * r.solution->length);
        const std::array<KleinPoint, 2> a{r.solution->steiner1, r.solution->steiner2};
        const std::array<KleinPoint, 2> b{s.solution->steiner1, s.solution->steiner2};
        const double same = hyp_distance(a[0], b[0]) + hyp_distance(a[1], b[1]);
        const double swapped = hyp_distance(a[0], b[1]) + hyp_distance(a[1], b[0]);
        EXPECT_LT(std::min(same, swapped), 1e-8) << i;
    }
    EXPECT_GT(compared, 30);
}

TEST(Fst4, IsopticSeedPoint) {
    const KleinPoint a(-0.3, 0.1), b(0.4, -0.2);
    for (double alpha : {0.3, kSteinerAngle, 2.9}) {
        const auto p = point_on_isoptic(a, b, alpha, {0.0, 0.9});
        ASSERT_TRUE(p.has_value());
        EXPECT_NEAR(angle_at(*p, a, b), alpha, 1e-9);
        EXPECT_GT(cross(b.vec() - a.vec(), p->vec() - a.vec()), 0.0);
    }
}

TEST(Fst4, Deterministic) {
    std::mt19937_64 rng(35);
    for (int i = 0; i < 30; ++i) {
        const auto q = random_quad(rng);
        const auto r1 = best(q), r2 = best(q);
        ASSERT_EQ(r1.status, r2.status);
        if (!r1.ok()) continue;
        EXPECT_EQ(r1.solution->steiner1, r2.solution->steiner1);
        EXPECT_EQ(r1.solution->length, r2.solution->length);
    }
}
