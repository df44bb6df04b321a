#include "hypersteiner/synth.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hypersteiner {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    // rejection keeps the result unbiased
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

LorentzPoint exp_map_from_apex(const LorentzPoint& mu, Vec2 v) {
    // parallel transport from o = (1,0,0): w = u + <mu,u> / (1 + mu0) (o + mu)
    const LorentzPoint u{0.0, v.x, v.y};
    const double c = minkowski_dot(mu, u) / (1.0 + mu.x0);
    const LorentzPoint w{u.x0 + c * (1.0 + mu.x0), u.x1 + c * mu.x1, u.x2 + c * mu.x2};
    // transport is an isometry, so the Lorentz norm of w is |v|
    const double r = norm(v);
    if (r == 0.0) return mu;
    const double ch = std::cosh(r), sh = std::sinh(r) / r;
    return {ch * mu.x0 + sh * w.x0, ch * mu.x1 + sh * w.x1, ch * mu.x2 + sh * w.x2};
}

void validate(const SamplerSpec& spec) {
    if (spec.n < 0) throw std::invalid_argument("n must be non-negative");
    if (spec.kind == SamplerKind::UniformBall) return;
    if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) throw std::invalid_argument("sigma must be positive");
    if (spec.kind == SamplerKind::DGonMixture) {
        if (spec.d < 3) throw std::invalid_argument("d must be at least 3");
        if (!(spec.t > 0.0 && spec.t < 1.0)) throw std::invalid_argument("t must lie in (0, 1)");
    }
}

KleinPoint draw_wrapped_gaussian(Rng& rng, const KleinPoint& mu, double sigma) {
    const LorentzPoint m = lorentz_from_klein(mu);
    for (int attempt = 0; attempt < 100; ++attempt) {
        const double vx = sigma * rng.normal();
        const double vy = sigma * rng.normal();
        const LorentzPoint p = exp_map_from_apex(m, {vx, vy});
        const Vec2 k{p.x1 / p.x0, p.x2 / p.x0};
        if (inside_disk(k)) return KleinPoint(k);
    }
    throw std::runtime_error("wrapped Gaussian sample kept landing on the boundary");
}

std::vector<KleinPoint> sample_wrapped_gaussian(const KleinPoint& mu, double sigma, int n, std::uint64_t seed) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    Rng rng(seed);
    std::vector<KleinPoint> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(draw_wrapped_gaussian(rng, mu, sigma));
    return out;
}

KleinPoint dgon_vertex(int d, int k, double t) {
    const double a = 2.0 * std::numbers::pi * k / d;
    return {t * std::cos(a), t * std::sin(a)};
}

Sample sample_dgon_mixture(const SamplerSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    Sample s;
    s.points.reserve(spec.n);
    s.labels.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        const int k = spec.stratified ? i % spec.d : static_cast<int>(rng.below(spec.d));
        s.points.push_back(draw_wrapped_gaussian(rng, dgon_vertex(spec.d, k, spec.t), spec.sigma));
        s.labels.push_back(k);
    }
    return s;
}

Sample sample_uniform_ball(int n, std::uint64_t seed) {
    Rng rng(seed);
    Sample s;
    s.points.reserve(n);
    while (static_cast<int>(s.points.size()) < n) {
        const Vec2 v{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        ++s.proposals;
        if (inside_disk(v)) s.points.emplace_back(v);
    }
    s.labels.assign(n, 0);
    return s;
}

Sample sample(const SamplerSpec& spec) {
    validate(spec);
    switch (spec.kind) {
        case SamplerKind::CenteredGaussian: {
            Sample s;
            s.points = sample_wrapped_gaussian({0.0, 0.0}, spec.sigma, spec.n, spec.seed);
            s.labels.assign(spec.n, 0);
            return s;
        }
        case SamplerKind::DGonMixture: return sample_dgon_mixture(spec);
        case SamplerKind::UniformBall: return sample_uniform_ball(spec.n, spec.seed);
    }
    throw std::logic_error("unknown sampler");
}

}  // namespace hypersteiner
