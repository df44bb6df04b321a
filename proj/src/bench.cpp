#include "hypersteiner/bench.h"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace hypersteiner {

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HYPERSTEINER_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

double thread_cpu_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

MeanStd mean_std(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double s = 0.0;
    for (double x : xs) s += x;
    const double m = s / static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return {m, std::sqrt(v / static_cast<double>(xs.size()))};
}

SteinerTree checked_run(const std::vector<KleinPoint>& points, const PipelineConfig& cfg, double* cpu_seconds) {
    const double t0 = thread_cpu_seconds();
    SteinerTree tree = hypersteiner(points, cfg);
    if (cpu_seconds) *cpu_seconds = thread_cpu_seconds() - t0;
    const std::string problem = check_tree(tree);
    if (!problem.empty()) throw InvariantError("invalid tree: " + problem);
    if (tree.total_length > tree.mst_length * (1.0 + 1e-12)) throw InvariantError("tree longer than the MST");
    return tree;
}

namespace {

// shortest text that reads back to the same double
std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace

RunReport run_scalability(const ScalabilityOptions& opts) {
    validate(opts.pipeline);
    if (opts.trials < 1) throw std::invalid_argument("trials must be positive");
    RunReport report;
    for (std::size_t s = 0; s < opts.sizes.size(); ++s) {
        for (int i = 0; i < opts.trials; ++i) {
            report.records.push_back({opts.sizes[s], i, derive_seed(opts.seed, s, i), 0.0, 0.0, 0, 0});
        }
    }
    for (int n : opts.sizes) {
        SamplerSpec probe = opts.sampler;
        probe.n = n;
        validate(probe);
        if (n < 2) throw std::invalid_argument("sizes must be at least 2");
    }
    parallel_for(static_cast<int>(report.records.size()), resolve_jobs(opts.jobs), [&](int k) {
        TrialRecord& r = report.records[k];
        SamplerSpec spec = opts.sampler;
        spec.n = r.n_points;
        spec.seed = r.seed;
        const auto pts = sample(spec).points;
        const SteinerTree tree = checked_run(pts, opts.pipeline, &r.cpu_seconds);
        r.red_percent = tree.red_percent;
        r.fst3_used = tree.fst3_used;
        r.fst4_used = tree.fst4_used;
    });
    for (std::size_t s = 0; s < opts.sizes.size(); ++s) {
        std::vector<double> red;
        SizeSummary sum;
        sum.n_points = opts.sizes[s];
        for (int i = 0; i < opts.trials; ++i) {
            const TrialRecord& r = report.records[s * opts.trials + i];
            red.push_back(r.red_percent);
            sum.total_cpu += r.cpu_seconds;
            sum.mean_fst3 += r.fst3_used;
            sum.mean_fst4 += r.fst4_used;
        }
        const MeanStd ms = mean_std(red);
        sum.mean_red = ms.mean;
        sum.std_red = ms.std;
        sum.mean_fst3 /= opts.trials;
        sum.mean_fst4 /= opts.trials;
        report.summaries.push_back(sum);
    }
    return report;
}

std::string scalability_csv(const RunReport& report) {
    std::ostringstream s;
    s << "record,n_points,trial,seed,red_percent,cpu_seconds,fst3_used,fst4_used,mean_red,std_red,total_cpu,mean_fst3,"
         "mean_fst4\n";
    for (const auto& r : report.records) {
        s << "trial," << r.n_points << ',' << r.trial << ',' << r.seed << ',' << fmt(r.red_percent) << ','
          << fmt(r.cpu_seconds) << ',' << r.fst3_used << ',' << r.fst4_used << ",,,,,\n";
    }
    for (const auto& a : report.summaries) {
        s << "aggregate," << a.n_points << ",,,,,,," << fmt(a.mean_red) << ',' << fmt(a.std_red) << ','
          << fmt(a.total_cpu) << ',' << fmt(a.mean_fst3) << ',' << fmt(a.mean_fst4) << '\n';
    }
    return s.str();
}

ConvergenceReport run_convergence(const ConvergenceOptions& opts) {
    validate(opts.pipeline);
    if (opts.trials < 1) throw std::invalid_argument("trials must be positive");
    if (opts.per_vertex < 1) throw std::invalid_argument("per_vertex must be positive");
    ConvergenceReport report;
    report.d = opts.d;
    report.per_vertex = opts.per_vertex;
    for (std::size_t k = 0; k < opts.t_list.size(); ++k) {
        SamplerSpec probe;
        probe.kind = SamplerKind::DGonMixture;
        probe.d = opts.d;
        probe.t = opts.t_list[k];
        probe.sigma = opts.sigma;
        validate(probe);
        for (int i = 0; i < opts.trials; ++i) report.records.push_back({opts.t_list[k], i, derive_seed(opts.seed, k, i), 0.0});
    }
    parallel_for(static_cast<int>(report.records.size()), resolve_jobs(opts.jobs), [&](int k) {
        ConvergenceRecord& r = report.records[k];
        SamplerSpec spec;
        spec.kind = SamplerKind::DGonMixture;
        spec.d = opts.d;
        spec.t = r.t;
        spec.sigma = opts.sigma;
        spec.n = opts.d * opts.per_vertex;
        spec.seed = r.seed;
        spec.stratified = true;
        r.red_percent = checked_run(sample(spec).points, opts.pipeline).red_percent;
    });
    for (std::size_t k = 0; k < opts.t_list.size(); ++k) {
        std::vector<double> red;
        for (int i = 0; i < opts.trials; ++i) red.push_back(report.records[k * opts.trials + i].red_percent);
        const MeanStd ms = mean_std(red);
        report.summaries.push_back({opts.t_list[k], ms.mean, ms.std});
    }
    return report;
}

std::string convergence_csv(const ConvergenceReport& report) {
    std::ostringstream s;
    s << "record,d,t,per_vertex,trial,seed,red_percent,mean_red,std_red\n";
    for (const auto& r : report.records) {
        s << "trial," << report.d << ',' << fmt(r.t) << ',' << report.per_vertex << ',' << r.trial << ',' << r.seed
          << ',' << fmt(r.red_percent) << ",,\n";
    }
    for (const auto& a : report.summaries) {
        s << "aggregate," << report.d << ',' << fmt(a.t) << ',' << report.per_vertex << ",,,," << fmt(a.mean_red)
          << ',' << fmt(a.std_red) << '\n';
    }
    return s.str();
}

TreeMethod parse_method(const std::string& s) {
    if (s == "hypersteiner") return TreeMethod::HyperSteiner;
    if (s == "mst") return TreeMethod::Mst;
    throw std::invalid_argument("unknown method '" + s + "'");
}

const char* to_string(TreeMethod m) { return m == TreeMethod::HyperSteiner ? "hypersteiner" : "mst"; }

HierarchyReport run_hierarchy(const HierarchyOptions& opts) {
    validate(opts.pipeline);
    if (opts.trials < 1) throw std::invalid_argument("trials must be positive");
    if (opts.reference.size() != opts.points.size()) throw std::invalid_argument("reference ages and points differ in length");
    if (opts.root_id < 0 || static_cast<std::size_t>(opts.root_id) >= opts.points.size()) {
        throw std::invalid_argument("root id out of range");
    }
    if (opts.reference[opts.root_id] != 0.0) throw std::invalid_argument("reference age of the root must be 0");
    if (!(opts.keep_fraction > 0.0 && opts.keep_fraction <= 1.0)) throw std::invalid_argument("keep_fraction must lie in (0, 1]");

    HierarchyReport report;
    report.method = opts.method;
    for (int i = 0; i < opts.trials; ++i) report.records.push_back({i, derive_seed(opts.seed, 0, i), 0, 0.0, 0.0});
    parallel_for(opts.trials, resolve_jobs(opts.jobs), [&](int k) {
        HierarchyRecord& r = report.records[k];
        const Subset sub = subsample(opts.points, {}, opts.keep_fraction, r.seed, opts.root_id);
        r.n_points = static_cast<int>(sub.points.size());
        if (sub.points.size() < 2) throw std::invalid_argument("subsample keeps fewer than two points");
        SteinerTree tree;
        if (opts.method == TreeMethod::HyperSteiner) {
            tree = checked_run(sub.points, opts.pipeline, &r.cpu_seconds);
        } else {
            const double t0 = thread_cpu_seconds();
            tree = mst_tree(sub.points);
            r.cpu_seconds = thread_cpu_seconds() - t0;
        }
        AgeVector ref;
        ref.root_id = sub.root_index;
        for (int idx : sub.indices) ref.ages.push_back(opts.reference[idx]);
        r.distance_error = distance_error(tree_ages(tree, sub.root_index), ref);
    });
    std::vector<double> errors;
    for (const auto& r : report.records) errors.push_back(r.distance_error);
    const MeanStd ms = mean_std(errors);
    report.mean_error = ms.mean;
    report.std_error = ms.std;
    return report;
}

std::string hierarchy_csv(const HierarchyReport& report) {
    std::ostringstream s;
    s << "record,method,trial,seed,n_points,distance_error,cpu_seconds,mean_error,std_error\n";
    for (const auto& r : report.records) {
        s << "trial," << to_string(report.method) << ',' << r.trial << ',' << r.seed << ',' << r.n_points << ','
          << fmt(r.distance_error) << ',' << fmt(r.cpu_seconds) << ",,\n";
    }
    s << "aggregate," << to_string(report.method) << ",,,,,," << fmt(report.mean_error) << ','
      << fmt(report.std_error) << '\n';
    return s.str();
}

}  // namespace hypersteiner
