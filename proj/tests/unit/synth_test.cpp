#include "hypersteiner/synth.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace hypersteiner;

namespace {

constexpr double kPi = std::numbers::pi;

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

double angle_of(Vec2 v) {
    const double a = std::atan2(v.y, v.x);
    return a < 0 ? a + 2.0 * kPi : a;
}

}  // namespace

TEST(Rng, UniformRange) {
    Rng rng(1);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_LT(lo, 1e-3);
    EXPECT_GT(hi, 1.0 - 1e-3);
    EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, NormalMoments) {
    Rng rng(2);
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(Rng, BelowCoversRange) {
    Rng rng(3);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto k = rng.below(7);
        ASSERT_LT(k, 7u);
        ++counts[k];
    }
    for (int c : counts) EXPECT_NEAR(c, 1000, 3.0 * std::sqrt(7000 * (1.0 / 7) * (6.0 / 7)));
    EXPECT_THROW(rng.below(0), std::invalid_argument);
}

TEST(Rng, Reproducible) {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
        EXPECT_EQ(a.normal(), b.normal());
    }
}

TEST(DeriveSeed, DistinctStreams) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 50; ++a)
        for (std::uint64_t b = 0; b < 50; ++b) seen.insert(derive_seed(42, a, b));
    EXPECT_EQ(seen.size(), 2500u);
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(7, 3, 4), derive_seed(7, 3, 4));
}

TEST(ExpMap, PreservesRadialDistance) {
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const KleinPoint mu(0.8 * rng.uniform() - 0.4, 0.8 * rng.uniform() - 0.4);
        const Vec2 v{0.7 * rng.normal(), 0.7 * rng.normal()};
        const LorentzPoint m = lorentz_from_klein(mu);
        const LorentzPoint p = exp_map_from_apex(m, v);
        EXPECT_NEAR(minkowski_dot(p, p), -1.0, 1e-10);
        EXPECT_NEAR(hyperboloid_distance(m, p), norm(v), 1e-9);
    }
    const LorentzPoint m = lorentz_from_klein(KleinPoint(0.3, -0.2));
    const LorentzPoint z = exp_map_from_apex(m, {0.0, 0.0});
    EXPECT_NEAR(z.x1, m.x1, 1e-15);
    EXPECT_NEAR(z.x2, m.x2, 1e-15);
}

TEST(ExpMap, ApexIsIdentityTransport) {
    // at the apex the tangent vector maps along its own direction
    const LorentzPoint p = exp_map_from_apex(LorentzPoint{}, {0.6, 0.8});
    EXPECT_NEAR(p.x0, std::cosh(1.0), 1e-14);
    EXPECT_NEAR(p.x1, 0.6 * std::sinh(1.0), 1e-14);
    EXPECT_NEAR(p.x2, 0.8 * std::sinh(1.0), 1e-14);
}

TEST(SamplerSpec, Validation) {
    SamplerSpec s;
    EXPECT_NO_THROW(validate(s));
    s.sigma = 0.0;
    EXPECT_THROW(validate(s), std::invalid_argument);
    s = {};
    s.kind = SamplerKind::DGonMixture;
    s.d = 2;
    EXPECT_THROW(validate(s), std::invalid_argument);
    s.d = 3;
    s.t = 1.0;
    EXPECT_THROW(validate(s), std::invalid_argument);
    s.t = 0.5;
    s.n = -1;
    EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(WrappedGaussian, TinySigmaStaysAtMean) {
    const KleinPoint mu(0.3, -0.5);
    for (const auto& p : sample_wrapped_gaussian(mu, 1e-8, 200, 5)) EXPECT_LT(hyp_distance(p, mu), 1e-6);
}

TEST(WrappedGaussian, CenteredMeanIsOrigin) {
    const int n = 100000;
    const auto pts = sample_wrapped_gaussian(KleinPoint(0.0, 0.0), 0.5, n, 6);
    double sx = 0, sy = 0, sxx = 0, syy = 0;
    for (const auto& p : pts) {
        sx += p.x();
        sy += p.y();
        sxx += p.x() * p.x();
        syy += p.y() * p.y();
    }
    const double mx = sx / n, my = sy / n;
    EXPECT_NEAR(mx, 0.0, 3.0 * std::sqrt((sxx / n - mx * mx) / n));
    EXPECT_NEAR(my, 0.0, 3.0 * std::sqrt((syy / n - my * my) / n));
}

TEST(WrappedGaussian, RadialLawMatchesQuadrature) {
    // The exponential map preserves distance from the mean, so the radius
    // follows the density r / s^2 exp(-r^2 / 2 s^2). Mean by Simpson's rule.
    const double s = 0.5;
    const auto density = [&](double r) { return r / (s * s) * std::exp(-r * r / (2 * s * s)); };
    const int m = 4000;
    const double hi = 12.0 * s, h = hi / m;
    double mass = 0.0, first = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double r = i * h, w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        mass += w * density(r);
        first += w * r * density(r);
    }
    const double expected = first / mass;

    const int n = 50000;
    double sum = 0.0;
    for (const auto& p : sample_wrapped_gaussian(KleinPoint(0.0, 0.0), s, n, 7)) sum += std::atanh(std::sqrt(p.norm_sq()));
    EXPECT_NEAR(sum / n, expected, 0.02 * expected);
}

TEST(WrappedGaussian, OffCenterRadialLaw) {
    const double s = 0.3;
    const KleinPoint mu(-0.4, 0.2);
    const int n = 20000;
    double sum = 0.0;
    for (const auto& p : sample_wrapped_gaussian(mu, s, n, 8)) sum += hyp_distance(p, mu);
    EXPECT_NEAR(sum / n, s * std::sqrt(kPi / 2.0), 0.02 * s);
}

TEST(WrappedGaussian, Deterministic) {
    const auto a = sample_wrapped_gaussian(KleinPoint(0.1, 0.1), 0.5, 500, 9);
    const auto b = sample_wrapped_gaussian(KleinPoint(0.1, 0.1), 0.5, 500, 9);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_wrapped_gaussian(KleinPoint(0.1, 0.1), 0.5, 500, 10));
}

TEST(DGon, VertexPositions) {
    const KleinPoint v = dgon_vertex(4, 1, 0.5);
    EXPECT_NEAR(v.x(), 0.0, 1e-15);
    EXPECT_NEAR(v.y(), 0.5, 1e-15);
    EXPECT_NEAR(dgon_vertex(15, 0, 0.9).x(), 0.9, 1e-15);
}

TEST(DGon, StratifiedTinySigmaGivesVertices) {
    SamplerSpec spec;
    spec.kind = SamplerKind::DGonMixture;
    spec.d = 4;
    spec.t = 0.5;
    spec.sigma = 1e-8;
    spec.n = 4;
    spec.stratified = true;
    const Sample s = sample(spec);
    ASSERT_EQ(s.points.size(), 4u);
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(s.labels[k], k);
        EXPECT_LT(hyp_distance(s.points[k], dgon_vertex(4, k, 0.5)), 1e-6);
    }
}

TEST(DGon, ComponentFrequencies) {
    SamplerSpec spec;
    spec.kind = SamplerKind::DGonMixture;
    spec.d = 5;
    spec.t = 0.6;
    spec.n = 10000;
    spec.seed = 11;
    const Sample s = sample(spec);
    std::vector<int> counts(5, 0);
    for (int l : s.labels) ++counts.at(l);
    const double p = 0.2, band = 3.0 * std::sqrt(spec.n * p * (1 - p));
    for (int c : counts) EXPECT_NEAR(c, spec.n * p, band);
}

TEST(DGon, RotationInvariant) {
    SamplerSpec spec;
    spec.kind = SamplerKind::DGonMixture;
    spec.d = 3;
    spec.t = 0.7;
    spec.sigma = 0.3;
    spec.n = 5000;
    spec.seed = 12;
    const Sample a = sample(spec);
    spec.seed = 13;
    const Sample b = sample(spec);
    std::vector<double> ra, rb, ta, tb;
    const double turn = 2.0 * kPi / spec.d;
    for (const auto& p : a.points) {
        ra.push_back(std::sqrt(p.norm_sq()));
        ta.push_back(std::fmod(angle_of(p.vec()) + turn, 2.0 * kPi));
    }
    for (const auto& p : b.points) {
        rb.push_back(std::sqrt(p.norm_sq()));
        tb.push_back(angle_of(p.vec()));
    }
    // alpha = 0.001
    const double crit = 1.95 * std::sqrt(2.0 / spec.n);
    EXPECT_LT(ks_statistic(ra, rb), crit);
    EXPECT_LT(ks_statistic(ta, tb), crit);
}

TEST(UniformBall, AcceptanceRate) {
    const Sample s = sample_uniform_ball(78540, 14);
    ASSERT_EQ(s.points.size(), 78540u);
    const double p = 0.25 * kPi, n = static_cast<double>(s.proposals);
    EXPECT_NEAR(s.points.size() / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
    double sx = 0, sy = 0;
    for (const auto& q : s.points) {
        EXPECT_TRUE(inside_disk(q.vec()));
        sx += q.x();
        sy += q.y();
    }
    // Var of a coordinate in the unit disk is 1/4
    const double tol = 3.0 * std::sqrt(0.25 / s.points.size());
    EXPECT_NEAR(sx / s.points.size(), 0.0, tol);
    EXPECT_NEAR(sy / s.points.size(), 0.0, tol);
}

TEST(Sample, DeterministicPerKind) {
    for (auto kind : {SamplerKind::CenteredGaussian, SamplerKind::DGonMixture, SamplerKind::UniformBall}) {
        SamplerSpec spec;
        spec.kind = kind;
        spec.n = 300;
        spec.seed = 15;
        const Sample a = sample(spec), b = sample(spec);
        EXPECT_EQ(a.points, b.points);
        EXPECT_EQ(a.labels, b.labels);
        EXPECT_EQ(a.points.size(), 300u);
    }
}

TEST(Sample, TrialStreamsUncorrelated) {
    SamplerSpec spec;
    spec.n = 20000;
    spec.seed = derive_seed(42, 1000, 0);
    const Sample a = sample(spec);
    spec.seed = derive_seed(42, 1000, 1);
    const Sample b = sample(spec);
    for (int coord = 0; coord < 2; ++coord) {
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
        for (int i = 0; i < spec.n; ++i) {
            const double x = coord ? a.points[i].y() : a.points[i].x();
            const double y = coord ? b.points[i].y() : b.points[i].x();
            sa += x;
            sb += y;
            saa += x * x;
            sbb += y * y;
            sab += x * y;
        }
        const double n = spec.n;
        const double r = (sab / n - sa / n * sb / n) /
                         std::sqrt((saa / n - sa / n * sa / n) * (sbb / n - sb / n * sb / n));
        EXPECT_LT(std::abs(r), 4.0 / std::sqrt(n));
    }
}

TEST(Sample, EmptyRequest) {
    SamplerSpec spec;
    spec.n = 0;
    EXPECT_TRUE(sample(spec).points.empty());
}
