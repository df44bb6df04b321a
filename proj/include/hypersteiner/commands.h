#pragma once

// Subcommands of the command-line tool. Each returns a process exit code
// and writes diagnostics to `err`.

#include "hypersteiner/bench.h"
#include "hypersteiner/io.h"

#include <iosfwd>
#include <string>

namespace hypersteiner {

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitNumerical = 3, kExitInvariant = 4 };

SolverMode parse_solver(const std::string& s);
SamplerKind parse_distribution(const std::string& s);

struct SmtOptions {
    std::string input;
    std::string out;
    std::string svg;  // empty: no drawing
    bool svg_delaunay = false;
    Model model = Model::Klein;
    PipelineConfig pipeline;
};

int cmd_smt(const SmtOptions& opts, std::ostream& err);

int cmd_bench_scalability(const ScalabilityOptions& opts, const std::string& out, std::ostream& err);

int cmd_bench_convergence(const ConvergenceOptions& opts, const std::string& out, std::ostream& err);

struct HierarchyCommand {
    std::string points;
    std::string ages;
    std::string out;
    Model model = Model::Klein;
    HierarchyOptions run;  // points and reference are read from the files
};

int cmd_hierarchy(const HierarchyCommand& opts, std::ostream& err);

int cmd_synth(const SamplerSpec& spec, const std::string& out, std::ostream& err);

}  // namespace hypersteiner
