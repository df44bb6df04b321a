#include "hypersteiner/hierarchy.h"

#include "hypersteiner/synth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace hypersteiner {

AgeVector tree_ages(const SteinerTree& tree, int root_id) {
    const std::size_t n = tree.nodes.size();
    if (root_id < 0 || static_cast<std::size_t>(root_id) >= n || tree.nodes[root_id].kind != NodeKind::Terminal) {
        throw std::invalid_argument("root is not a terminal of the tree");
    }
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& e : tree.edges) {
        adj[e.u].emplace_back(e.v, e.length);
        adj[e.v].emplace_back(e.u, e.length);
    }
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[root_id] = 0.0;
    heap.emplace(0.0, root_id);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : adj[u]) {
            if (d + w < dist[v]) {
                dist[v] = d + w;
                heap.emplace(dist[v], v);
            }
        }
    }
    AgeVector out;
    out.root_id = root_id;
    for (std::size_t i = 0; i < n; ++i) {
        if (tree.nodes[i].kind != NodeKind::Terminal) continue;
        if (dist[i] == kInf) throw std::logic_error("tree is not connected");
        out.ages.push_back(dist[i]);
    }
    return out;
}

double distance_error(const AgeVector& pred, const AgeVector& ref) {
    if (pred.ages.size() != ref.ages.size()) throw std::invalid_argument("age vectors differ in length");
    double s = 0.0;
    for (std::size_t i = 0; i < pred.ages.size(); ++i) {
        const double d = pred.ages[i] - ref.ages[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Subset subsample(const std::vector<KleinPoint>& points, const std::vector<int>& labels, double keep_fraction,
                 std::uint64_t seed, int root_id) {
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) throw std::invalid_argument("keep_fraction must lie in (0, 1]");
    const std::size_t n = points.size();
    if (root_id < 0 || static_cast<std::size_t>(root_id) >= n) throw std::invalid_argument("root index out of range");
    if (!labels.empty() && labels.size() != n) throw std::invalid_argument("labels and points differ in length");

    const auto k = static_cast<std::size_t>(std::floor(keep_fraction * static_cast<double>(n)));
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    // partial Fisher-Yates
    Rng rng(seed);
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(order[i], order[j]);
    }
    std::vector<int> chosen(order.begin(), order.begin() + std::min(k, n));
    if (std::find(chosen.begin(), chosen.end(), root_id) == chosen.end()) chosen.push_back(root_id);
    std::sort(chosen.begin(), chosen.end());

    Subset s;
    s.indices = chosen;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        s.points.push_back(points[chosen[i]]);
        if (!labels.empty()) s.labels.push_back(labels[chosen[i]]);
        if (chosen[i] == root_id) s.root_index = static_cast<int>(i);
    }
    return s;
}

PlantedTree sample_planted_tree(const PlantedTreeSpec& spec) {
    if (spec.depth < 1 || spec.depth > 12) throw std::invalid_argument("depth must lie in [1, 12]");
    if (!(spec.branch_length > 0.0) || !(spec.noise >= 0.0) || spec.n < 1) {
        throw std::invalid_argument("bad planted tree parameters");
    }

    // Branches in breadth-first order; branch b has children 2b+1, 2b+2.
    // Directions are angles in the frame transported from the apex.
    struct Branch {
        LorentzPoint start;
        double angle = 0.0;
        double age = 0.0;
    };
    Rng rng(spec.seed);
    const int count = (1 << spec.depth) - 1;
    std::vector<Branch> branches(count);
    branches[0] = {LorentzPoint{}, 2.0 * std::numbers::pi * rng.uniform(), 0.0};
    for (int b = 0; b < count; ++b) {
        const Branch& p = branches[b];
        const LorentzPoint end =
            exp_map_from_apex(p.start, {spec.branch_length * std::cos(p.angle), spec.branch_length * std::sin(p.angle)});
        for (int c : {2 * b + 1, 2 * b + 2}) {
            if (c >= count) continue;
            const double turn = c % 2 ? spec.spread : -spec.spread;
            branches[c] = {end, p.angle + turn, p.age + spec.branch_length};
        }
    }

    PlantedTree out;
    out.points.emplace_back(0.0, 0.0);
    out.labels.push_back(0);
    out.ages.ages.push_back(0.0);
    out.ages.root_id = 0;
    const auto same = [&](const KleinPoint& q) { return std::find(out.points.begin(), out.points.end(), q) != out.points.end(); };
    while (static_cast<int>(out.points.size()) < spec.n) {
        const int b = static_cast<int>(rng.below(count));
        const double s = spec.branch_length * rng.uniform();
        const Branch& br = branches[b];
        const LorentzPoint on = exp_map_from_apex(br.start, {s * std::cos(br.angle), s * std::sin(br.angle)});
        const KleinPoint base = klein_from_lorentz(on);
        const KleinPoint p = spec.noise > 0.0 ? draw_wrapped_gaussian(rng, base, spec.noise) : base;
        if (same(p)) continue;
        out.points.push_back(p);
        out.labels.push_back(b);
        out.ages.ages.push_back(br.age + s);
    }
    return out;
}

}  // namespace hypersteiner
