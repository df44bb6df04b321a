#pragma once

// Seeded synthetic point sets: wrapped Gaussians, d-gon mixtures of them,
// and uniform samples of the disk.

#include "hypersteiner/klein.h"

#include <cstdint>
#include <random>
#include <vector>

namespace hypersteiner {

/// mt19937_64 with explicitly defined uniform and normal draws, so sample
/// sequences do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal by Box-Muller; the second value of each pair is cached.
    double normal();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer of x.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream seed: splitmix64 folded over master, then each index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Tangent vector at the hyperboloid apex (1, 0, 0) with spatial components
/// v, moved to the tangent space at mu by parallel transport along the
/// geodesic, then mapped to the hyperboloid by the exponential map.
LorentzPoint exp_map_from_apex(const LorentzPoint& mu, Vec2 v);

enum class SamplerKind { CenteredGaussian, DGonMixture, UniformBall };

struct SamplerSpec {
    SamplerKind kind = SamplerKind::CenteredGaussian;
    double sigma = 0.5;  // tangent-space standard deviation
    int d = 3;
    double t = 0.5;  // d-gon radius in Klein coordinates
    int n = 100;
    std::uint64_t seed = 0;
    /// Mixture only: component i % d for sample i instead of a uniform draw.
    bool stratified = false;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const SamplerSpec& spec);

struct Sample {
    std::vector<KleinPoint> points;
    std::vector<int> labels;      // mixture component, or 0
    std::uint64_t proposals = 0;  // uniform ball: draws from the square
};

/// Samples within kBoundaryEps of the boundary are redrawn, at most 100
/// times per point before std::runtime_error.
std::vector<KleinPoint> sample_wrapped_gaussian(const KleinPoint& mu, double sigma, int n, std::uint64_t seed);

/// Vertex k of the regular d-gon of Klein radius t, at angle 2 pi k / d.
KleinPoint dgon_vertex(int d, int k, double t);

Sample sample_dgon_mixture(const SamplerSpec& spec);
Sample sample_uniform_ball(int n, std::uint64_t seed);
Sample sample(const SamplerSpec& spec);

/// Same draws as sample_wrapped_gaussian, continuing an existing stream.
KleinPoint draw_wrapped_gaussian(Rng& rng, const KleinPoint& mu, double sigma);

}  // namespace hypersteiner
