#include "hypersteiner/commands.h"

#include <CLI11.hpp>

#include <iostream>

using namespace hypersteiner;

namespace {

void add_pipeline_flags(CLI::App* cmd, int& max_fst, std::string& solver) {
    cmd->add_option("--max-fst", max_fst, "largest local full Steiner tree")->check(CLI::IsMember({3, 4}));
    cmd->add_option("--solver", solver, "Fermat point solver")->check(CLI::IsMember({"simple", "precise"}));
}

PipelineConfig pipeline_from(int max_fst, const std::string& solver) {
    PipelineConfig cfg;
    cfg.max_fst = max_fst;
    cfg.solver.mode = parse_solver(solver);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heuristic Steiner minimal trees in the hyperbolic plane"};
    app.require_subcommand(1);

    // smt
    SmtOptions smt;
    std::string smt_model = "klein", smt_solver = "simple";
    int smt_max_fst = 4;
    auto* c_smt = app.add_subcommand("smt", "Steiner tree of a point CSV");
    c_smt->add_option("input", smt.input, "CSV with header x,y[,label]")->required();
    c_smt->add_option("--model", smt_model, "coordinates of the input")->check(CLI::IsMember({"klein", "poincare"}));
    add_pipeline_flags(c_smt, smt_max_fst, smt_solver);
    c_smt->add_option("--out", smt.out, "tree JSON")->required();
    c_smt->add_option("--svg", smt.svg, "SVG drawing");
    c_smt->add_flag("--svg-delaunay", smt.svg_delaunay, "draw the Delaunay edges dashed");

    // bench-scalability
    ScalabilityOptions scal;
    std::string scal_dist = "centered", scal_solver = "simple", scal_out;
    int scal_max_fst = 4;
    auto* c_scal = app.add_subcommand("bench-scalability", "RED over sample sizes");
    c_scal->add_option("--dist", scal_dist)->check(CLI::IsMember({"centered", "dgon", "uniform"}));
    c_scal->add_option("--sigma", scal.sampler.sigma);
    c_scal->add_option("--d", scal.sampler.d);
    c_scal->add_option("--t", scal.sampler.t);
    c_scal->add_option("--sizes", scal.sizes)->delimiter(',');
    c_scal->add_option("--trials", scal.trials);
    add_pipeline_flags(c_scal, scal_max_fst, scal_solver);
    c_scal->add_option("--seed", scal.seed);
    c_scal->add_option("--jobs", scal.jobs, "worker threads (default: HYPERSTEINER_JOBS or all cores)");
    c_scal->add_option("--out", scal_out)->required();

    // bench-convergence
    ConvergenceOptions conv;
    std::string conv_solver = "simple", conv_out;
    int conv_max_fst = 4;
    auto* c_conv = app.add_subcommand("bench-convergence", "RED over d-gon radii");
    c_conv->add_option("--d", conv.d)->check(CLI::IsMember({3, 4}));
    c_conv->add_option("--t-list", conv.t_list)->delimiter(',');
    c_conv->add_option("--per-vertex", conv.per_vertex);
    c_conv->add_option("--sigma", conv.sigma);
    c_conv->add_option("--trials", conv.trials);
    add_pipeline_flags(c_conv, conv_max_fst, conv_solver);
    c_conv->add_option("--seed", conv.seed);
    c_conv->add_option("--jobs", conv.jobs);
    c_conv->add_option("--out", conv_out)->required();

    // hierarchy
    HierarchyCommand hier;
    std::string hier_model = "klein", hier_method = "hypersteiner", hier_solver = "simple";
    int hier_max_fst = 4;
    auto* c_hier = app.add_subcommand("hierarchy", "distance error of tree ages under subsampling");
    c_hier->add_option("points", hier.points, "CSV with header x,y[,label]")->required();
    c_hier->add_option("ages", hier.ages, "CSV with header age or id,age")->required();
    c_hier->add_option("--model", hier_model)->check(CLI::IsMember({"klein", "poincare"}));
    c_hier->add_option("--root-id", hier.run.root_id)->required();
    c_hier->add_option("--method", hier_method)->check(CLI::IsMember({"hypersteiner", "mst"}));
    c_hier->add_option("--keep-fraction", hier.run.keep_fraction);
    c_hier->add_option("--trials", hier.run.trials);
    add_pipeline_flags(c_hier, hier_max_fst, hier_solver);
    c_hier->add_option("--seed", hier.run.seed);
    c_hier->add_option("--jobs", hier.run.jobs);
    c_hier->add_option("--out", hier.out)->required();

    // synth
    SamplerSpec syn;
    std::string syn_dist = "centered", syn_out;
    auto* c_syn = app.add_subcommand("synth", "sample a synthetic point set");
    c_syn->add_option("--dist", syn_dist)->check(CLI::IsMember({"centered", "dgon", "uniform"}));
    c_syn->add_option("--sigma", syn.sigma);
    c_syn->add_option("--d", syn.d);
    c_syn->add_option("--t", syn.t);
    c_syn->add_option("--n", syn.n);
    c_syn->add_option("--seed", syn.seed);
    c_syn->add_flag("--stratified", syn.stratified, "mixture component i % d for point i");
    c_syn->add_option("--out", syn_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (*c_smt) {
        smt.model = parse_model(smt_model);
        smt.pipeline = pipeline_from(smt_max_fst, smt_solver);
        return cmd_smt(smt, std::cerr);
    }
    if (*c_scal) {
        scal.sampler.kind = parse_distribution(scal_dist);
        scal.pipeline = pipeline_from(scal_max_fst, scal_solver);
        return cmd_bench_scalability(scal, scal_out, std::cerr);
    }
    if (*c_conv) {
        conv.pipeline = pipeline_from(conv_max_fst, conv_solver);
        return cmd_bench_convergence(conv, conv_out, std::cerr);
    }
    if (*c_hier) {
        hier.model = parse_model(hier_model);
        hier.run.method = parse_method(hier_method);
        hier.run.pipeline = pipeline_from(hier_max_fst, hier_solver);
        return cmd_hierarchy(hier, std::cerr);
    }
    syn.kind = parse_distribution(syn_dist);
    return cmd_synth(syn, syn_out, std::cerr);
}
