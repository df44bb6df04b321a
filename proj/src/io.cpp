#include "hypersteiner/io.h"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hypersteiner {

InputError::InputError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Model parse_model(const std::string& s) {
    if (s == "klein") return Model::Klein;
    if (s == "poincare") return Model::Poincare;
    throw InputError(0, "unknown model '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, int line, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
        throw InputError(line, std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

long parse_int(const std::string& s, int line, const char* what) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw InputError(line, std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

// First non-blank line, split; `line` is left at its number.
std::vector<std::string> read_header(std::istream& in, int& line) {
    std::string text;
    while (std::getline(in, text)) {
        ++line;
        if (!trim(text).empty()) return split(text);
    }
    throw InputError(0, "empty file");
}

// shortest text that reads back to the same double
std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace

PointSet read_points_csv(std::istream& in, Model model) {
    int line = 0;
    const auto header = read_header(in, line);
    const bool labelled = header == std::vector<std::string>{"x", "y", "label"};
    if (!labelled && header != std::vector<std::string>{"x", "y"}) {
        throw InputError(line, "expected header x,y or x,y,label");
    }
    PointSet out;
    std::string text;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty()) continue;
        const auto cells = split(text);
        if (cells.size() != (labelled ? 3u : 2u)) throw InputError(line, "wrong number of columns");
        const Vec2 v{parse_double(cells[0], line, "x"), parse_double(cells[1], line, "y")};
        try {
            out.points.push_back(model == Model::Klein ? KleinPoint(v) : klein_from_poincare(v));
        } catch (const std::domain_error&) {
            throw InputError(line, "point is not inside the unit disk");
        }
        if (labelled) out.labels.push_back(static_cast<int>(parse_int(cells[2], line, "label")));
    }
    return out;
}

PointSet read_points_file(const std::string& path, Model model) {
    std::ifstream in(path);
    if (!in) throw InputError(0, "cannot open " + path);
    return read_points_csv(in, model);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
    const bool labelled = !points.labels.empty();
    out << (labelled ? "x,y,label\n" : "x,y\n");
    for (std::size_t i = 0; i < points.points.size(); ++i) {
        out << fmt(points.points[i].x()) << ',' << fmt(points.points[i].y());
        if (labelled) out << ',' << points.labels[i];
        out << '\n';
    }
}

std::vector<double> read_ages_csv(std::istream& in) {
    int line = 0;
    const auto header = read_header(in, line);
    const bool with_id = header == std::vector<std::string>{"id", "age"};
    if (!with_id && header != std::vector<std::string>{"age"}) throw InputError(line, "expected header age or id,age");
    std::vector<std::pair<long, double>> rows;
    std::string text;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty()) continue;
        const auto cells = split(text);
        if (cells.size() != (with_id ? 2u : 1u)) throw InputError(line, "wrong number of columns");
        const long id = with_id ? parse_int(cells[0], line, "id") : static_cast<long>(rows.size());
        const double age = parse_double(cells.back(), line, "age");
        if (age < 0.0) throw InputError(line, "negative age");
        rows.emplace_back(id, age);
    }
    std::vector<double> ages(rows.size(), -1.0);
    for (const auto& [id, age] : rows) {
        if (id < 0 || static_cast<std::size_t>(id) >= rows.size() || ages[id] >= 0.0) {
            throw InputError(0, "ids must be 0..n-1, each once");
        }
        ages[id] = age;
    }
    return ages;
}

std::vector<double> read_ages_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(0, "cannot open " + path);
    return read_ages_csv(in);
}

std::string tree_json(const SteinerTree& tree) {
    nlohmann::ordered_json j;
    j["model"] = "klein";
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : tree.nodes) {
        nlohmann::ordered_json node;
        node["id"] = n.id;
        node["kind"] = n.kind == NodeKind::Terminal ? "terminal" : "steiner";
        node["x"] = n.point.x();
        node["y"] = n.point.y();
        j["nodes"].push_back(std::move(node));
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : tree.edges) {
        nlohmann::ordered_json edge;
        edge["u"] = e.u;
        edge["v"] = e.v;
        edge["length"] = e.length;
        j["edges"].push_back(std::move(edge));
    }
    j["total_length"] = tree.total_length;
    j["mst_length"] = tree.mst_length;
    j["red_percent"] = tree.red_percent;
    j["counts"] = {{"fst3", tree.fst3_used}, {"fst4", tree.fst4_used}};
    return j.dump(2) + "\n";
}

std::string tree_svg(const SteinerTree& tree, const Triangulation* tri) {
    // disk of radius 240 centered in a 500 x 500 canvas, y up
    const auto px = [](double x) { return fmt(250.0 + 240.0 * x); };
    const auto py = [](double y) { return fmt(250.0 - 240.0 * y); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n";
    s << "<circle cx=\"250\" cy=\"250\" r=\"240\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (tri) {
        s << "<g stroke=\"gray\" stroke-width=\"0.5\" stroke-dasharray=\"3,3\">\n";
        for (const auto& e : tri->edges) {
            const auto& a = tri->points[e.u];
            const auto& b = tri->points[e.v];
            s << "<line class=\"delaunay\" x1=\"" << px(a.x()) << "\" y1=\"" << py(a.y()) << "\" x2=\"" << px(b.x())
              << "\" y2=\"" << py(b.y()) << "\"/>\n";
        }
        s << "</g>\n";
    }
    s << "<g stroke=\"steelblue\" stroke-width=\"1.2\">\n";
    for (const auto& e : tree.edges) {
        const auto& a = tree.nodes[e.u].point;
        const auto& b = tree.nodes[e.v].point;
        s << "<line class=\"edge\" x1=\"" << px(a.x()) << "\" y1=\"" << py(a.y()) << "\" x2=\"" << px(b.x())
          << "\" y2=\"" << py(b.y()) << "\"/>\n";
    }
    s << "</g>\n";
    for (const auto& n : tree.nodes) {
        if (n.kind == NodeKind::Terminal) {
            s << "<circle class=\"terminal\" cx=\"" << px(n.point.x()) << "\" cy=\"" << py(n.point.y())
              << "\" r=\"2.5\" fill=\"black\"/>\n";
        } else {
            s << "<circle class=\"steiner\" cx=\"" << px(n.point.x()) << "\" cy=\"" << py(n.point.y())
              << "\" r=\"2\" fill=\"red\"/>\n";
        }
    }
    s << "</svg>\n";
    return s.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(0, "cannot write " + path);
    out << text;
    if (!out) throw InputError(0, "write failed for " + path);
}

}  // namespace hypersteiner
