#include "hypersteiner/commands.h"

#include <functional>
#include <ostream>
#include <sstream>

namespace hypersteiner {

SolverMode parse_solver(const std::string& s) {
    if (s == "simple") return SolverMode::Simple;
    if (s == "precise") return SolverMode::Precise;
    throw InputError(0, "unknown solver '" + s + "'");
}

SamplerKind parse_distribution(const std::string& s) {
    if (s == "centered") return SamplerKind::CenteredGaussian;
    if (s == "dgon") return SamplerKind::DGonMixture;
    if (s == "uniform") return SamplerKind::UniformBall;
    throw InputError(0, "unknown distribution '" + s + "'");
}

namespace {

int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace

int cmd_smt(const SmtOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const PointSet in = read_points_file(opts.input, opts.model);
        if (in.points.size() < 2) throw InputError(0, "need at least two points");
        const SteinerTree tree = checked_run(in.points, opts.pipeline);
        write_text_file(opts.out, tree_json(tree));
        if (!opts.svg.empty()) {
            if (opts.svg_delaunay) {
                const Triangulation tri = delaunay(in.points);
                write_text_file(opts.svg, tree_svg(tree, &tri));
            } else {
                write_text_file(opts.svg, tree_svg(tree));
            }
        }
    });
}

int cmd_bench_scalability(const ScalabilityOptions& opts, const std::string& out, std::ostream& err) {
    return guarded(err, [&] { write_text_file(out, scalability_csv(run_scalability(opts))); });
}

int cmd_bench_convergence(const ConvergenceOptions& opts, const std::string& out, std::ostream& err) {
    return guarded(err, [&] { write_text_file(out, convergence_csv(run_convergence(opts))); });
}

int cmd_hierarchy(const HierarchyCommand& opts, std::ostream& err) {
    return guarded(err, [&] {
        HierarchyOptions run = opts.run;
        run.points = read_points_file(opts.points, opts.model).points;
        run.reference = read_ages_file(opts.ages);
        write_text_file(opts.out, hierarchy_csv(run_hierarchy(run)));
    });
}

int cmd_synth(const SamplerSpec& spec, const std::string& out, std::ostream& err) {
    return guarded(err, [&] {
        const Sample s = sample(spec);
        std::ostringstream text;
        write_points_csv(text, {s.points, s.labels});
        write_text_file(out, text.str());
    });
}

}  // namespace hypersteiner
