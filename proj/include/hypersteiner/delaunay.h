#pragma once

#include "hypersteiner/klein.h"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace hypersteiner {

inline constexpr int kNoTriangle = -1;

/// Weighted Euclidean site whose power bisectors coincide with the hyperbolic
/// bisectors of the Klein points they were lifted from.
struct PowerSite {
    Vec2 center;
    double weight_sq = 0.0;  // may be negative
    std::size_t source_index = 0;

    /// Height of the site on the power paraboloid, center.center - weight_sq.
    double lift_height() const { return dot(center, center) - weight_sq; }
};

/// lambda = 1/sqrt(1-|p|^2); center = (lambda/2) p; weight_sq = |center|^2 - lambda.
PowerSite lift_site(const KleinPoint& p, std::size_t source_index = 0);

/// Undirected edge with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    static Edge make(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeAdjacency {
    int left = kNoTriangle;   // triangle containing the edge
    int right = kNoTriangle;  // second triangle, or kNoTriangle on the hull
};

struct Triangulation {
    std::vector<KleinPoint> points;
    /// Vertex triples, counter-clockwise in Klein coordinates.
    std::vector<std::array<int, 3>> triangles;
    /// neighbors[t][k] is the triangle across the edge opposite vertex k.
    std::vector<std::array<int, 3>> neighbors;
    /// Sorted; parallel to `adjacency`.
    std::vector<Edge> edges;
    std::vector<EdgeAdjacency> adjacency;

    /// Index into `edges`, if (a, b) is an edge.
    std::optional<std::size_t> find_edge(int a, int b) const;
    bool has_edge(int a, int b) const { return find_edge(a, b).has_value(); }
};

/// Hyperbolic Delaunay triangulation of distinct Klein points.
///
/// The faces of the convex hull of the lifted power sites (center,
/// lift_height) that are visible from the origin, computed as the equivalent
/// lower hull of the hemisphere lift (p, -sqrt(1 - |p|^2)). The triangles
/// cover the Klein convex hull and contain every hyperbolic Delaunay edge.
/// Cocircular ties are broken by symbolic perturbation favouring low indices.
/// Fewer than three points, or all points on one geodesic, give an edge path
/// with no triangles. Throws std::invalid_argument on duplicates.
Triangulation delaunay(const std::vector<KleinPoint>& points);

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double length = 0.0;
};

struct EdgeList {
    std::vector<WeightedEdge> edges;

    double total_length() const;
};

/// Kruskal restricted to the triangulation's edges.
EdgeList mst_restricted(const std::vector<KleinPoint>& points, const Triangulation& tri);

/// Kruskal over the complete distance graph, O(n^2 log n).
EdgeList mst_full(const std::vector<KleinPoint>& points);

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t a);
    /// False if a and b were already joined.
    bool unite(std::size_t a, std::size_t b);
    std::size_t components() const { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_;
};

}  // namespace hypersteiner
