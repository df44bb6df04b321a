#include "hypersteiner/delaunay.h"

#include "hypersteiner/predicates.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace hypersteiner {

using predicates::Point3;

PowerSite lift_site(const KleinPoint& p, std::size_t source_index) {
    const double lambda = 1.0 / std::sqrt(1.0 - p.norm_sq());
    const Vec2 center = (0.5 * lambda) * p.vec();
    return {center, dot(center, center) - lambda, source_index};
}

std::optional<std::size_t> Triangulation::find_edge(int a, int b) const {
    const Edge e = Edge::make(a, b);
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
}

namespace {

constexpr int kInf = -1;

struct Tri {
    std::array<int, 3> v{};
    std::array<int, 3> n{};
    bool alive = true;
};

int slot_of(const std::array<int, 3>& v, int vertex) {
    for (int k = 0; k < 3; ++k)
        if (v[k] == vertex) return k;
    return -1;
}

// Incremental regular triangulation with ghost triangles (a, b, kInf) closing
// the convex hull. Sites are lifted to the lower unit hemisphere,
// (p, -sqrt(1 - |p|^2)). Scaling a power-lifted site (c, lambda) by 1/lambda
// and sending the origin to infinity maps it to this lift, so the lower hull
// here is the part of the power-lift hull seen from the origin. Its xy
// coordinates are the Klein coordinates themselves, which keeps every planar
// test exact on the input. Points are inserted in index order; a coarse grid
// over the disk supplies walk starting points.
class RegularTriangulator {
public:
    explicit RegularTriangulator(const std::vector<KleinPoint>& points) : points_(points) {
        lift_.reserve(points.size());
        for (const KleinPoint& p : points) {
            const double r = norm(p.vec());
            lift_.push_back({p.x(), p.y(), -std::sqrt((1.0 - r) * (1.0 + r))});
        }
        const auto n = static_cast<int>(points.size());
        grid_side_ = std::max(1, static_cast<int>(std::sqrt(n / 2.0)));
        grid_.assign(static_cast<std::size_t>(grid_side_) * grid_side_, -1);
        vertex_tri_.assign(points.size(), kNoTriangle);
        vertex_stamp_.assign(points.size() + 1, 0);
    }

    // False if all points are collinear.
    bool build() {
        const int n = static_cast<int>(points_.size());
        int third = -1;
        for (int k = 2; k < n; ++k) {
            if (o2(0, 1, k) != 0) {
                third = k;
                break;
            }
        }
        if (third < 0) return false;
        init(0, 1, third);
        for (int p = 2; p < n; ++p) {
            if (p != third) insert(p);
        }
        return true;
    }

    std::vector<std::array<int, 3>> finite_triangles() const {
        std::vector<std::array<int, 3>> out;
        for (const Tri& t : tris_) {
            if (t.alive && t.v[2] != kInf) out.push_back(t.v);
        }
        return out;
    }

private:
    int o2(int a, int b, int c) const {
        return predicates::orient2d(lift_[a].x, lift_[a].y, lift_[b].x, lift_[b].y, lift_[c].x, lift_[c].y);
    }

    // Sign of orient3d on the lifted sites, with heights symbolically lowered
    // by eps_i where smaller indices dominate. Never zero for a proper triangle.
    int power_sign(int a, int b, int c, int p) const {
        const int s = predicates::orient3d(lift_[a], lift_[b], lift_[c], lift_[p]);
        if (s != 0) return s;
        const std::array<int, 4> rows{a, b, c, p};
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int i, int j) { return rows[i] < rows[j]; });
        for (int r : order) {
            std::array<int, 3> rest{};
            int m = 0;
            for (int i = 0; i < 4; ++i)
                if (i != r) rest[m++] = rows[i];
            const int o = o2(rest[0], rest[1], rest[2]);
            if (o != 0) return (r % 2 == 0) ? -o : o;
        }
        return 0;
    }

    bool strictly_between(int a, int b, int p) const {
        const Point3 &pa = lift_[a], &pb = lift_[b], &pp = lift_[p];
        if (pa.x != pb.x) return std::min(pa.x, pb.x) < pp.x && pp.x < std::max(pa.x, pb.x);
        return std::min(pa.y, pb.y) < pp.y && pp.y < std::max(pa.y, pb.y);
    }

    bool in_conflict(int t, int p) const {
        const Tri& tri = tris_[t];
        if (tri.v[2] == kInf) {
            const int o = o2(tri.v[0], tri.v[1], p);
            if (o != 0) return o > 0;
            return strictly_between(tri.v[0], tri.v[1], p);
        }
        return power_sign(tri.v[0], tri.v[1], tri.v[2], p) > 0;
    }

    int alloc(const std::array<int, 3>& v) {
        int id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
            tris_[id] = Tri{};
        } else {
            id = static_cast<int>(tris_.size());
            tris_.emplace_back();
            stamp_.push_back(0);
        }
        tris_[id].v = v;
        tris_[id].n = {kNoTriangle, kNoTriangle, kNoTriangle};
        for (int x : v)
            if (x != kInf) vertex_tri_[x] = id;
        return id;
    }

    // Slot of `t` whose opposite edge is {a, b}.
    int edge_slot(int t, int a, int b) const {
        const auto& v = tris_[t].v;
        for (int k = 0; k < 3; ++k) {
            const int u = v[(k + 1) % 3], w = v[(k + 2) % 3];
            if ((u == a && w == b) || (u == b && w == a)) return k;
        }
        throw std::logic_error("delaunay: adjacency corrupted");
    }

    void link(int t1, int t2) {
        for (int k = 0; k < 3; ++k) {
            const int u = tris_[t1].v[(k + 1) % 3], w = tris_[t1].v[(k + 2) % 3];
            for (int j = 0; j < 3; ++j) {
                const int a = tris_[t2].v[(j + 1) % 3], b = tris_[t2].v[(j + 2) % 3];
                if (u == b && w == a) {
                    tris_[t1].n[k] = t2;
                    tris_[t2].n[j] = t1;
                }
            }
        }
    }

    void init(int a, int b, int c) {
        if (o2(a, b, c) < 0) std::swap(a, b);
        const std::array<int, 4> ids{alloc({a, b, c}), alloc({b, a, kInf}), alloc({c, b, kInf}), alloc({a, c, kInf})};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) link(ids[i], ids[j]);
        for (int v : {a, b, c}) {
            vertex_tri_[v] = ids[0];
            grid_[cell_of(v)] = v;
        }
    }

    int cell_of(int v) const {
        const auto coord = [&](double t) {
            const int i = static_cast<int>((t + 1.0) * 0.5 * grid_side_);
            return std::clamp(i, 0, grid_side_ - 1);
        };
        return coord(points_[v].y()) * grid_side_ + coord(points_[v].x());
    }

    int start_for(int p) const {
        const int cell = cell_of(p);
        const int cx = cell % grid_side_, cy = cell / grid_side_;
        for (int r = 0; r < grid_side_; ++r) {
            for (int y = std::max(0, cy - r); y <= std::min(grid_side_ - 1, cy + r); ++y) {
                for (int x = std::max(0, cx - r); x <= std::min(grid_side_ - 1, cx + r); ++x) {
                    if (std::max(std::abs(x - cx), std::abs(y - cy)) != r) continue;
                    const int v = grid_[y * grid_side_ + x];
                    if (v >= 0 && tris_[vertex_tri_[v]].alive) return vertex_tri_[v];
                }
            }
        }
        for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
            if (tris_[t].alive) return t;
        throw std::logic_error("delaunay: empty triangulation");
    }

    int locate(int p, int t) {
        const std::size_t limit = 4 * tris_.size() + 16;
        for (std::size_t steps = 0; steps < limit; ++steps) {
            const Tri& tri = tris_[t];
            if (tri.v[2] == kInf) {
                if (o2(tri.v[0], tri.v[1], p) > 0) return t;
                t = tri.n[2];
                continue;
            }
            const int r = static_cast<int>(++walk_counter_ % 3);
            bool moved = false;
            for (int i = 0; i < 3; ++i) {
                const int k = (r + i) % 3;
                if (o2(tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], p) < 0) {
                    t = tri.n[k];
                    moved = true;
                    break;
                }
            }
            if (!moved) return t;
        }
        for (int s = 0; s < static_cast<int>(tris_.size()); ++s)
            if (tris_[s].alive && in_conflict(s, p)) return s;
        throw std::logic_error("delaunay: point location failed");
    }

    // The hemisphere lift is strictly convex, so a site can only be hidden by
    // rounding of its height. Lower it until the containing face sees it.
    void unhide(int t, int p) {
        double step = std::ldexp(std::max(std::abs(lift_[p].z), 1e-300), -52);
        while (!in_conflict(t, p)) {
            lift_[p].z -= step;
            step *= 2.0;
        }
    }

    struct Boundary {
        int u, w, outside;
    };

    // Conflict region grown from t0, with its boundary edges.
    void grow_cavity(int t0, int p, std::vector<int>& cavity, std::vector<Boundary>& boundary) {
        ++generation_;
        cavity.assign(1, t0);
        boundary.clear();
        stamp_[t0] = generation_;
        for (std::size_t i = 0; i < cavity.size(); ++i) {
            const Tri tri = tris_[cavity[i]];
            for (int k = 0; k < 3; ++k) {
                const int nb = tri.n[k];
                if (stamp_[nb] == generation_) continue;
                if (stamp_[nb] != -generation_ && in_conflict(nb, p)) {
                    stamp_[nb] = generation_;
                    cavity.push_back(nb);
                } else {
                    stamp_[nb] = -generation_;
                    boundary.push_back({tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], nb});
                }
            }
        }
    }

    // A cavity can be retriangulated from p if it is a topological disk with
    // no interior vertex whose boundary edges all face p. Exact conflict tests
    // guarantee this; rounded lift heights occasionally do not.
    bool star_shaped(const std::vector<int>& cavity, const std::vector<Boundary>& boundary, int p) {
        if (cavity.size() + 2 != boundary.size()) return false;
        ++generation_;
        for (const Boundary& b : boundary) {
            if (b.u != kInf && b.w != kInf && o2(b.u, b.w, p) <= 0) return false;
            vertex_stamp_[b.u + 1] = generation_;
            vertex_stamp_[b.w + 1] = generation_;
        }
        for (int t : cavity)
            for (int x : tris_[t].v)
                if (vertex_stamp_[x + 1] != generation_) return false;
        return true;
    }

    // Smallest valid cavity: the face containing p, plus the face across the
    // edge p lies on, if any.
    void minimal_cavity(int t0, int p, std::vector<int>& cavity, std::vector<Boundary>& boundary) {
        cavity.assign(1, t0);
        const Tri& tri = tris_[t0];
        if (tri.v[2] == kInf) {
            // Outside the hull: the ghosts seen from p, whose tests are exact.
            for (std::size_t i = 0; i < cavity.size(); ++i) {
                for (int nb : {tris_[cavity[i]].n[0], tris_[cavity[i]].n[1]}) {
                    if (std::find(cavity.begin(), cavity.end(), nb) == cavity.end() && in_conflict(nb, p)) {
                        cavity.push_back(nb);
                    }
                }
            }
        } else {
            for (int k = 0; k < 3; ++k)
                if (o2(tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], p) == 0) cavity.push_back(tri.n[k]);
        }
        ++generation_;
        for (int t : cavity) stamp_[t] = generation_;
        boundary.clear();
        for (int t : cavity) {
            for (int k = 0; k < 3; ++k) {
                const int nb = tris_[t].n[k];
                if (stamp_[nb] != generation_) {
                    boundary.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], nb});
                }
            }
        }
    }

    void insert(int p) {
        const int t0 = locate(p, start_for(p));
        if (tris_[t0].v[2] != kInf) unhide(t0, p);

        std::vector<int> cavity;
        std::vector<Boundary> boundary;
        grow_cavity(t0, p, cavity, boundary);
        const bool exact = star_shaped(cavity, boundary, p);
        if (!exact) {
            minimal_cavity(t0, p, cavity, boundary);
            if (!star_shaped(cavity, boundary, p)) {
                throw std::logic_error("delaunay: invalid insertion cavity");
            }
        }

        for (int t : cavity) {
            tris_[t].alive = false;
            free_.push_back(t);
        }

        std::vector<std::pair<int, int>> by_first, by_second;
        std::vector<int> created;
        created.reserve(boundary.size());
        for (const Boundary& b : boundary) {
            std::array<int, 3> v{b.u, b.w, p};
            if (v[0] == kInf) v = {v[1], v[2], v[0]};
            else if (v[1] == kInf) v = {v[2], v[0], v[1]};
            const int id = alloc(v);
            tris_[id].n[slot_of(v, p)] = b.outside;
            tris_[b.outside].n[edge_slot(b.outside, b.u, b.w)] = id;
            by_first.emplace_back(b.u, id);
            by_second.emplace_back(b.w, id);
            created.push_back(id);
        }
        const auto lookup = [](const std::vector<std::pair<int, int>>& m, int key) {
            for (const auto& [k, id] : m)
                if (k == key) return id;
            throw std::logic_error("delaunay: open cavity boundary");
        };
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            const int id = created[i];
            const auto& v = tris_[id].v;
            tris_[id].n[slot_of(v, boundary[i].u)] = lookup(by_first, boundary[i].w);
            tris_[id].n[slot_of(v, boundary[i].w)] = lookup(by_second, boundary[i].u);
        }
        vertex_tri_[p] = created.front();
        grid_[cell_of(p)] = p;
        if (!exact) flip_repair(p, created);
    }

    // Lawson flips around p after a fallback insertion. Only convex
    // quadrilaterals are flipped, so the result stays a triangulation.
    void flip_repair(int p, const std::vector<int>& created) {
        std::vector<int> stack;
        for (int t : created)
            if (tris_[t].v[2] != kInf) stack.push_back(t);
        std::size_t budget = 64 * tris_.size() + 64;
        while (!stack.empty() && budget-- > 0) {
            const int t = stack.back();
            stack.pop_back();
            if (!tris_[t].alive || tris_[t].v[2] == kInf) continue;
            const int k = slot_of(tris_[t].v, p);
            if (k < 0) continue;
            const int u = tris_[t].v[(k + 1) % 3], w = tris_[t].v[(k + 2) % 3];
            const int nb = tris_[t].n[k];
            if (tris_[nb].v[2] == kInf) continue;
            const int j = edge_slot(nb, u, w);
            const int d = tris_[nb].v[j];
            if (power_sign(u, w, p, d) <= 0) continue;
            if (o2(p, u, d) <= 0 || o2(p, d, w) <= 0) continue;

            const int a = tris_[t].n[(k + 1) % 3];   // across (w, p)
            const int b = tris_[t].n[(k + 2) % 3];   // across (p, u)
            const int c = tris_[nb].n[slot_of(tris_[nb].v, w)];  // across (u, d)
            const int e = tris_[nb].n[slot_of(tris_[nb].v, u)];  // across (d, w)
            tris_[t].v = {p, u, d};
            tris_[t].n = {c, nb, b};
            tris_[nb].v = {p, d, w};
            tris_[nb].n = {e, a, t};
            tris_[c].n[edge_slot(c, u, d)] = t;
            tris_[a].n[edge_slot(a, w, p)] = nb;
            for (int x : {p, u, d}) vertex_tri_[x] = t;
            vertex_tri_[w] = nb;
            stack.push_back(t);
            stack.push_back(nb);
        }
    }

    const std::vector<KleinPoint>& points_;
    std::vector<Point3> lift_;
    std::vector<Tri> tris_;
    std::vector<int> stamp_;
    std::vector<int> vertex_stamp_;
    std::vector<int> free_;
    std::vector<int> vertex_tri_;
    std::vector<int> grid_;
    int grid_side_ = 1;
    int generation_ = 0;
    unsigned walk_counter_ = 0;
};

// Orders collinear points along their common line.
std::vector<int> sorted_along_line(const std::vector<Vec2>& coords, std::vector<int> ids) {
    const Vec2 a = coords[ids[0]], b = coords[ids[1]];
    const bool use_x = a.x != b.x;
    std::sort(ids.begin(), ids.end(), [&](int i, int j) {
        return use_x ? coords[i].x < coords[j].x : coords[i].y < coords[j].y;
    });
    return ids;
}

void finish(Triangulation& tri) {
    for (auto& t : tri.triangles) {
        const auto m = std::min_element(t.begin(), t.end()) - t.begin();
        std::rotate(t.begin(), t.begin() + m, t.end());
    }
    std::sort(tri.triangles.begin(), tri.triangles.end());

    struct HalfEdge {
        Edge e;
        int t;
        int k;
    };
    std::vector<HalfEdge> half;
    half.reserve(3 * tri.triangles.size());
    for (int t = 0; t < static_cast<int>(tri.triangles.size()); ++t) {
        const auto& v = tri.triangles[t];
        for (int k = 0; k < 3; ++k) half.push_back({Edge::make(v[(k + 1) % 3], v[(k + 2) % 3]), t, k});
    }
    std::sort(half.begin(), half.end(), [](const HalfEdge& a, const HalfEdge& b) {
        return std::tie(a.e, a.t) < std::tie(b.e, b.t);
    });
    tri.neighbors.assign(tri.triangles.size(), {kNoTriangle, kNoTriangle, kNoTriangle});
    if (!half.empty()) {
        tri.edges.clear();
        tri.adjacency.clear();
    }
    for (std::size_t i = 0; i < half.size();) {
        std::size_t j = i;
        while (j < half.size() && half[j].e == half[i].e) ++j;
        if (j - i > 2) throw std::logic_error("delaunay: non-manifold edge");
        EdgeAdjacency adj{half[i].t, kNoTriangle};
        if (j - i == 2) {
            adj.right = half[i + 1].t;
            tri.neighbors[half[i].t][half[i].k] = half[i + 1].t;
            tri.neighbors[half[i + 1].t][half[i + 1].k] = half[i].t;
        }
        tri.edges.push_back(half[i].e);
        tri.adjacency.push_back(adj);
        i = j;
    }
}

void set_path(Triangulation& tri, const std::vector<int>& order) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        tri.edges.push_back(Edge::make(order[i], order[i + 1]));
        tri.adjacency.push_back({});
    }
    std::sort(tri.edges.begin(), tri.edges.end());
}

}  // namespace

Triangulation delaunay(const std::vector<KleinPoint>& points) {
    Triangulation tri;
    tri.points = points;
    const int n = static_cast<int>(points.size());

    std::vector<int> ids(points.size());
    std::iota(ids.begin(), ids.end(), 0);
    {
        std::vector<int> s = ids;
        std::sort(s.begin(), s.end(), [&](int i, int j) {
            return std::make_pair(points[i].x(), points[i].y()) < std::make_pair(points[j].x(), points[j].y());
        });
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (points[s[i]] == points[s[i - 1]]) throw std::invalid_argument("delaunay: duplicate points");
        }
    }
    if (n < 2) return tri;

    std::vector<Vec2> klein(points.size());
    for (int i = 0; i < n; ++i) klein[i] = points[i].vec();
    bool collinear = true;
    for (int i = 2; i < n && collinear; ++i) {
        collinear = predicates::orient2d(klein[0].x, klein[0].y, klein[1].x, klein[1].y, klein[i].x, klein[i].y) == 0;
    }
    if (collinear) {
        set_path(tri, sorted_along_line(klein, ids));
        return tri;
    }

    RegularTriangulator builder(points);
    if (!builder.build()) throw std::logic_error("delaunay: collinearity test disagrees with triangulator");
    tri.triangles = builder.finite_triangles();
    finish(tri);
    return tri;
}

double EdgeList::total_length() const {
    double s = 0.0;
    for (const WeightedEdge& e : edges) s += e.length;
    return s;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t a) {
    while (parent_[a] != a) {
        parent_[a] = parent_[parent_[a]];
        a = parent_[a];
    }
    return a;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
}

namespace {

EdgeList kruskal(std::size_t n, std::vector<WeightedEdge> candidates) {
    std::sort(candidates.begin(), candidates.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return std::tie(a.length, a.u, a.v) < std::tie(b.length, b.u, b.v);
    });
    DisjointSets sets(n);
    EdgeList out;
    for (const WeightedEdge& e : candidates) {
        if (sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
            out.edges.push_back(e);
            if (out.edges.size() + 1 == n) break;
        }
    }
    return out;
}

}  // namespace

EdgeList mst_restricted(const std::vector<KleinPoint>& points, const Triangulation& tri) {
    std::vector<WeightedEdge> candidates;
    candidates.reserve(tri.edges.size());
    for (const Edge& e : tri.edges) candidates.push_back({e.u, e.v, hyp_distance(points[e.u], points[e.v])});
    EdgeList out = kruskal(points.size(), std::move(candidates));
    if (!points.empty() && out.edges.size() + 1 != points.size()) {
        throw std::logic_error("mst_restricted: triangulation does not connect all points");
    }
    return out;
}

EdgeList mst_full(const std::vector<KleinPoint>& points) {
    std::vector<WeightedEdge> candidates;
    const int n = static_cast<int>(points.size());
    candidates.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) candidates.push_back({i, j, hyp_distance(points[i], points[j])});
    return kruskal(points.size(), std::move(candidates));
}

}  // namespace hypersteiner
