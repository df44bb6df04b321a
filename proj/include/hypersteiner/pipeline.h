#pragma once

// Heuristic Steiner minimal trees: Delaunay triangulation, MST, local full
// Steiner trees on marked triangles and quadrilaterals, greedy concatenation.

#include "hypersteiner/delaunay.h"
#include "hypersteiner/fermat.h"
#include "hypersteiner/fst4.h"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace hypersteiner {

struct PipelineConfig {
    int max_fst = 4;  // 3 or 4
    SolverConfig solver;
    Fst4Options fst4;
};

/// Throws std::invalid_argument unless max_fst is 3 or 4 and the solver
/// config is valid.
void validate(const PipelineConfig& cfg);

enum class NodeKind { Terminal, Steiner };

struct TreeNode {
    int id = 0;
    NodeKind kind = NodeKind::Terminal;
    KleinPoint point;
};

struct TreeEdge {
    int u = 0;
    int v = 0;
    double length = 0.0;
};

struct PipelineStats {
    int marked = 0;
    int quads = 0;
    int fst3_failed = 0;  // solver failures on marked triangles
    int fst4_failed = 0;  // quads where neither topology gave a tree
};

/// Terminals keep their input index as id; Steiner nodes follow in the order
/// they were accepted.
struct SteinerTree {
    std::vector<TreeNode> nodes;
    std::vector<TreeEdge> edges;
    double total_length = 0.0;
    double mst_length = 0.0;
    double red_percent = 0.0;
    int fst3_used = 0;
    int fst4_used = 0;
    PipelineStats stats;

    std::size_t terminal_count() const;
};

/// Empty if the tree is structurally sound (spanning, acyclic, Steiner nodes
/// of degree 3, lengths consistent); otherwise a description of the problem.
std::string check_tree(const SteinerTree& tree);

/// Triangles with exactly two MST edges that admit a full Steiner tree.
std::vector<int> mark_triangles(const Triangulation& tri, const EdgeList& mst);

/// Pairs (sigma, sigma') of edge-adjacent triangles, sigma marked, whose
/// union holds three MST edges. Sorted, each unordered pair once, with
/// first < second.
std::vector<std::pair<int, int>> quad_candidates(const Triangulation& tri, const EdgeList& mst,
                                                 const std::vector<int>& marked);

/// The four terminals of a candidate ordered (apex of first, shared edge,
/// apex of second), so both pairings tried by fst4_best are non-crossing.
std::array<int, 4> quad_terminals(const Triangulation& tri, std::pair<int, int> quad);

/// A unit of the concatenation queue: a full Steiner tree or an MST edge.
struct Component {
    std::vector<int> terminals;         // sorted
    std::vector<KleinPoint> steiner;    // new nodes
    std::vector<std::pair<int, int>> links;  // endpoints: terminal index, or -(k+1) for steiner[k]
    double length = 0.0;
    double ratio = 1.0;
};

/// Greedy concatenation over `queue` in order: a component is accepted iff
/// its terminals lie in pairwise distinct parts. The caller puts the MST
/// edges last so the result spans.
SteinerTree greedy_concatenate(const std::vector<Component>& queue, const std::vector<KleinPoint>& terminals);

/// Heuristic Steiner minimal tree. Throws std::invalid_argument for fewer
/// than two points, duplicates, or an invalid config.
SteinerTree hypersteiner(const std::vector<KleinPoint>& points, const PipelineConfig& cfg = {});

/// The MST as a SteinerTree without Steiner nodes.
SteinerTree mst_tree(const std::vector<KleinPoint>& points);

}  // namespace hypersteiner
