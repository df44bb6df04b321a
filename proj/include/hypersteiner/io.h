#pragma once

// Point and age CSV files, tree JSON, and SVG drawings.

#include "hypersteiner/delaunay.h"
#include "hypersteiner/hierarchy.h"
#include "hypersteiner/pipeline.h"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypersteiner {

/// Malformed input; `line` is 1-based, 0 when no line applies.
class InputError : public std::runtime_error {
public:
    InputError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

enum class Model { Klein, Poincare };

Model parse_model(const std::string& s);

struct PointSet {
    std::vector<KleinPoint> points;
    std::vector<int> labels;  // empty if the file has no label column
};

/// Header `x,y` or `x,y,label`; Poincare coordinates are converted to Klein.
/// Blank lines are skipped. Throws InputError.
PointSet read_points_csv(std::istream& in, Model model = Model::Klein);
PointSet read_points_file(const std::string& path, Model model = Model::Klein);

/// Writes `x,y,label` (or `x,y` without labels); numbers read back exactly.
void write_points_csv(std::ostream& out, const PointSet& points);

/// Header `age` or `id,age`; with ids, every id in 0..n-1 must appear once.
/// Throws InputError.
std::vector<double> read_ages_csv(std::istream& in);
std::vector<double> read_ages_file(const std::string& path);

/// The tree as a JSON document; coordinates are Klein.
std::string tree_json(const SteinerTree& tree);

/// Unit circle, tree edges as straight segments, terminal and Steiner
/// markers; Delaunay edges dashed when `tri` is given.
std::string tree_svg(const SteinerTree& tree, const Triangulation* tri = nullptr);

/// Writes `text` to `path`; throws InputError if the file cannot be opened.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hypersteiner
