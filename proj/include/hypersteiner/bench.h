#pragma once

// Seeded benchmark drivers: RED over sample sizes, RED over d-gon radii,
// and the distance error of tree ages under subsampling.

#include "hypersteiner/hierarchy.h"
#include "hypersteiner/pipeline.h"
#include "hypersteiner/synth.h"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypersteiner {

/// A produced tree failed check_tree.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// `requested` if positive, else HYPERSTEINER_JOBS if set and positive,
/// else the number of hardware threads.
int resolve_jobs(int requested);

/// Runs body(0..count-1) on up to `jobs` threads. The first exception thrown
/// by any call is rethrown after all workers stop.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

/// CPU seconds consumed by the calling thread.
double thread_cpu_seconds();

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population
};

MeanStd mean_std(const std::vector<double>& xs);

/// Pipeline run with check_tree; throws InvariantError on a defect.
SteinerTree checked_run(const std::vector<KleinPoint>& points, const PipelineConfig& cfg, double* cpu_seconds = nullptr);

struct ScalabilityOptions {
    SamplerSpec sampler;  // n and seed are overridden per trial
    std::vector<int> sizes{50, 100};
    int trials = 100;
    PipelineConfig pipeline;
    std::uint64_t seed = 0;
    int jobs = 0;
};

struct TrialRecord {
    int n_points = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double red_percent = 0.0;
    double cpu_seconds = 0.0;
    int fst3_used = 0;
    int fst4_used = 0;
};

struct SizeSummary {
    int n_points = 0;
    double mean_red = 0.0;
    double std_red = 0.0;
    double total_cpu = 0.0;
    double mean_fst3 = 0.0;
    double mean_fst4 = 0.0;
};

struct RunReport {
    std::vector<TrialRecord> records;  // by size, then trial
    std::vector<SizeSummary> summaries;
};

/// Trial seed: derive_seed(seed, size_index, trial).
RunReport run_scalability(const ScalabilityOptions& opts);
std::string scalability_csv(const RunReport& report);

struct ConvergenceOptions {
    int d = 3;
    std::vector<double> t_list{0.40, 0.60, 0.80, 0.90, 0.95, 0.98};
    int per_vertex = 1;
    double sigma = 0.15;
    int trials = 100;
    PipelineConfig pipeline;
    std::uint64_t seed = 0;
    int jobs = 0;
};

struct ConvergenceRecord {
    double t = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    double red_percent = 0.0;
};

struct ConvergenceSummary {
    double t = 0.0;
    double mean_red = 0.0;
    double std_red = 0.0;
};

struct ConvergenceReport {
    int d = 3;
    int per_vertex = 1;
    std::vector<ConvergenceRecord> records;
    std::vector<ConvergenceSummary> summaries;
};

/// d * per_vertex points per trial, component i % d for point i. Trial
/// seed: derive_seed(seed, t_index, trial).
ConvergenceReport run_convergence(const ConvergenceOptions& opts);
std::string convergence_csv(const ConvergenceReport& report);

enum class TreeMethod { HyperSteiner, Mst };

TreeMethod parse_method(const std::string& s);
const char* to_string(TreeMethod m);

struct HierarchyOptions {
    std::vector<KleinPoint> points;
    std::vector<double> reference;  // ages by point index
    int root_id = 0;
    TreeMethod method = TreeMethod::HyperSteiner;
    double keep_fraction = 1.0;
    int trials = 1;
    PipelineConfig pipeline;
    std::uint64_t seed = 0;
    int jobs = 0;
};

struct HierarchyRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int n_points = 0;
    double distance_error = 0.0;
    double cpu_seconds = 0.0;
};

struct HierarchyReport {
    TreeMethod method = TreeMethod::HyperSteiner;
    std::vector<HierarchyRecord> records;
    double mean_error = 0.0;
    double std_error = 0.0;
};

/// Subsample seed: derive_seed(seed, 0, trial), independent of the method,
/// so runs with different methods are paired. Throws std::invalid_argument
/// if the reference length differs from the point count or the root's
/// reference age is not 0.
HierarchyReport run_hierarchy(const HierarchyOptions& opts);
std::string hierarchy_csv(const HierarchyReport& report);

}  // namespace hypersteiner
