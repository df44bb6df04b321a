#include "hypersteiner/pipeline.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hypersteiner {

void validate(const PipelineConfig& cfg) {
    if (cfg.max_fst != 3 && cfg.max_fst != 4) throw std::invalid_argument("max_fst must be 3 or 4");
    validate(cfg.solver);
    if (!(cfg.fst4.iter_tol > 0.0) || cfg.fst4.max_sweeps < 1) throw std::invalid_argument("bad fst4 options");
}

std::size_t SteinerTree::terminal_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.kind == NodeKind::Terminal; }));
}

std::string check_tree(const SteinerTree& tree) {
    const std::size_t n = tree.nodes.size();
    if (n == 0) return "no nodes";
    if (tree.edges.size() + 1 != n) return "edge count is not node count - 1";
    for (std::size_t i = 0; i < n; ++i)
        if (tree.nodes[i].id != static_cast<int>(i)) return "node ids are not 0..n-1";
    std::vector<int> degree(n, 0);
    DisjointSets sets(n);
    double sum = 0.0;
    for (const auto& e : tree.edges) {
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n)
            return "edge endpoint out of range";
        if (!sets.unite(e.u, e.v)) return "cycle";
        ++degree[e.u];
        ++degree[e.v];
        const double len = hyp_distance(tree.nodes[e.u].point, tree.nodes[e.v].point);
        if (std::abs(len - e.length) > 1e-9 * std::max(1.0, len)) return "edge length mismatch";
        sum += e.length;
    }
    if (sets.components() != 1) return "not connected";
    for (std::size_t i = 0; i < n; ++i) {
        if (tree.nodes[i].kind == NodeKind::Steiner && degree[i] != 3) return "steiner node without degree 3";
        if (n > 1 && degree[i] == 0) return "isolated node";
    }
    if (std::abs(sum - tree.total_length) > 1e-9 * std::max(1.0, sum)) return "total_length mismatch";
    return {};
}

namespace {

int mst_edges_in(const Triangulation& tri, int t, const std::vector<char>& is_mst) {
    int count = 0;
    const auto& v = tri.triangles[t];
    for (int k = 0; k < 3; ++k) count += is_mst[*tri.find_edge(v[k], v[(k + 1) % 3])];
    return count;
}

std::vector<char> mst_flags(const Triangulation& tri, const EdgeList& mst) {
    std::vector<char> flags(tri.edges.size(), 0);
    for (const auto& e : mst.edges) {
        const auto idx = tri.find_edge(e.u, e.v);
        if (!idx) throw std::logic_error("MST edge missing from triangulation");
        flags[*idx] = 1;
    }
    return flags;
}

}  // namespace

std::vector<int> mark_triangles(const Triangulation& tri, const EdgeList& mst) {
    const auto is_mst = mst_flags(tri, mst);
    std::vector<int> marked;
    for (int t = 0; t < static_cast<int>(tri.triangles.size()); ++t) {
        if (mst_edges_in(tri, t, is_mst) != 2) continue;
        const auto& v = tri.triangles[t];
        if (admits_fst(tri.points[v[0]], tri.points[v[1]], tri.points[v[2]])) marked.push_back(t);
    }
    return marked;
}

std::vector<std::pair<int, int>> quad_candidates(const Triangulation& tri, const EdgeList& mst,
                                                 const std::vector<int>& marked) {
    const auto is_mst = mst_flags(tri, mst);
    std::vector<std::pair<int, int>> out;
    for (int s : marked) {
        const int in_s = mst_edges_in(tri, s, is_mst);
        for (int k = 0; k < 3; ++k) {
            const int n = tri.neighbors[s][k];
            if (n == kNoTriangle) continue;
            const auto& v = tri.triangles[s];
            const bool shared_mst = is_mst[*tri.find_edge(v[(k + 1) % 3], v[(k + 2) % 3])];
            if (in_s + mst_edges_in(tri, n, is_mst) - shared_mst == 3) out.emplace_back(std::min(s, n), std::max(s, n));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::array<int, 4> quad_terminals(const Triangulation& tri, std::pair<int, int> quad) {
    const auto& a = tri.triangles[quad.first];
    int k = 0;
    while (k < 3 && tri.neighbors[quad.first][k] != quad.second) ++k;
    if (k == 3) throw std::invalid_argument("triangles are not adjacent");
    const int x = a[(k + 1) % 3], y = a[(k + 2) % 3];
    const auto& b = tri.triangles[quad.second];
    int z = -1;
    for (int v : b)
        if (v != x && v != y) z = v;
    return {a[k], x, y, z};
}

SteinerTree greedy_concatenate(const std::vector<Component>& queue, const std::vector<KleinPoint>& terminals) {
    SteinerTree tree;
    const int n = static_cast<int>(terminals.size());
    for (int i = 0; i < n; ++i) tree.nodes.push_back({i, NodeKind::Terminal, terminals[i]});
    DisjointSets sets(terminals.size());
    for (const auto& c : queue) {
        std::vector<std::size_t> roots;
        for (int t : c.terminals) roots.push_back(sets.find(t));
        std::sort(roots.begin(), roots.end());
        if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) continue;

        const int base = static_cast<int>(tree.nodes.size());
        for (const auto& s : c.steiner) {
            tree.nodes.push_back({static_cast<int>(tree.nodes.size()), NodeKind::Steiner, s});
        }
        const auto node = [&](int endpoint) { return endpoint >= 0 ? endpoint : base + (-endpoint - 1); };
        for (const auto& [a, b] : c.links) {
            const int u = node(a), v = node(b);
            tree.edges.push_back({u, v, hyp_distance(tree.nodes[u].point, tree.nodes[v].point)});
        }
        for (std::size_t i = 1; i < c.terminals.size(); ++i) sets.unite(c.terminals[0], c.terminals[i]);
        if (c.steiner.size() == 1) ++tree.fst3_used;
        if (c.steiner.size() == 2) ++tree.fst4_used;
        if (sets.components() == 1) break;
    }
    for (const auto& e : tree.edges) tree.total_length += e.length;
    return tree;
}

namespace {

Component edge_component(const WeightedEdge& e) {
    return {{std::min(e.u, e.v), std::max(e.u, e.v)}, {}, {{e.u, e.v}}, e.length, 1.0};
}

void finish(SteinerTree& tree, double mst_length) {
    tree.mst_length = mst_length;
    tree.red_percent = mst_length > 0.0 ? (1.0 - tree.total_length / mst_length) * 100.0 : 0.0;
}

}  // namespace

SteinerTree mst_tree(const std::vector<KleinPoint>& points) {
    if (points.size() < 2) throw std::invalid_argument("need at least two points");
    const Triangulation tri = delaunay(points);
    const EdgeList mst = mst_restricted(points, tri);
    std::vector<Component> queue;
    for (const auto& e : mst.edges) queue.push_back(edge_component(e));
    SteinerTree tree = greedy_concatenate(queue, points);
    finish(tree, mst.total_length());
    return tree;
}

SteinerTree hypersteiner(const std::vector<KleinPoint>& points, const PipelineConfig& cfg) {
    validate(cfg);
    if (points.size() < 2) throw std::invalid_argument("need at least two points");
    const Triangulation tri = delaunay(points);
    const EdgeList mst = mst_restricted(points, tri);
    PipelineStats stats;

    std::vector<Component> fsts;
    const std::vector<int> marked = mark_triangles(tri, mst);
    stats.marked = static_cast<int>(marked.size());
    for (int t : marked) {
        const auto& v = tri.triangles[t];
        const auto r = fermat_point(points[v[0]], points[v[1]], points[v[2]], cfg.solver);
        if (!r.ok()) {
            ++stats.fst3_failed;
            continue;
        }
        Component c;
        c.terminals = {v[0], v[1], v[2]};
        std::sort(c.terminals.begin(), c.terminals.end());
        c.steiner = {r.solution->steiner};
        c.links = {{v[0], -1}, {v[1], -1}, {v[2], -1}};
        c.length = r.solution->length;
        c.ratio = r.solution->ratio;
        fsts.push_back(std::move(c));
    }

    if (cfg.max_fst == 4) {
        std::vector<Edge> mst_sorted;
        for (const auto& e : mst.edges) mst_sorted.push_back(Edge::make(e.u, e.v));
        std::sort(mst_sorted.begin(), mst_sorted.end());
        const auto in_mst = [&](int a, int b) {
            return std::binary_search(mst_sorted.begin(), mst_sorted.end(), Edge::make(a, b));
        };

        const auto quads = quad_candidates(tri, mst, marked);
        stats.quads = static_cast<int>(quads.size());
        for (const auto& q : quads) {
            const auto t = quad_terminals(tri, q);
            const auto r = fst4_best(points[t[0]], points[t[1]], points[t[2]], points[t[3]], cfg.solver, cfg.fst4);
            if (!r.ok()) {
                ++stats.fst4_failed;
                continue;
            }
            // denominator: the three MST edges among the four terminals
            double mst_part = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (in_mst(t[i], t[j])) mst_part += hyp_distance(points[t[i]], points[t[j]]);
            const auto pairs = pairs_of(r.solution->topology);
            Component c;
            c.terminals = {t[0], t[1], t[2], t[3]};
            std::sort(c.terminals.begin(), c.terminals.end());
            c.steiner = {r.solution->steiner1, r.solution->steiner2};
            c.links = {{t[pairs[0][0]], -1}, {t[pairs[0][1]], -1}, {-1, -2}, {t[pairs[1][0]], -2}, {t[pairs[1][1]], -2}};
            c.length = r.solution->length;
            c.ratio = r.solution->length / mst_part;
            fsts.push_back(std::move(c));
        }
    }

    std::stable_sort(fsts.begin(), fsts.end(), [](const Component& a, const Component& b) {
        if (a.ratio != b.ratio) return a.ratio < b.ratio;
        return a.terminals < b.terminals;
    });
    std::vector<WeightedEdge> mst_edges = mst.edges;
    std::sort(mst_edges.begin(), mst_edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.length != b.length) return a.length < b.length;
        return Edge::make(a.u, a.v) < Edge::make(b.u, b.v);
    });
    for (const auto& e : mst_edges) fsts.push_back(edge_component(e));

    SteinerTree tree = greedy_concatenate(fsts, points);
    tree.stats = stats;
    finish(tree, mst.total_length());
    return tree;
}

}  // namespace hypersteiner
