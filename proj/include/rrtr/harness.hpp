#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrtr/scenario.hpp"

namespace rrtr {

struct RunRecord {
    std::string scenario;
    std::string algorithm;
    std::uint64_t seed{0};
    int n_samples{0};
    double h_length{0.0};
    double lifted_length{0.0};
    double backend_cost{0.0};
    int nodes{0};
    double wall_ms{0.0};
    std::string status{"ok"};
};

struct SummaryStats {
    int trials{0};
    double min{0.0}, q1{0.0}, median{0.0}, q3{0.0}, max{0.0};
    double mean{0.0}, std{0.0};
    int failures{0};
};

/// Boxplot statistics of the successful-trial values (quartiles by linear
/// interpolation of the sorted sample).
SummaryStats summarize(std::vector<double> values, int failures);

/// "%.9g" float formatting used for every CSV/JSON number we emit.
std::string format_g9(double v);

/// One planner run; writes path.json and appends to runs.csv when out_dir is
/// nonempty. Throws GoalNotReachedError.
RunRecord run_single(const ScenarioConfig& sc, CostBackend backend, std::uint64_t seed,
                     int n_override = 0, const std::string& out_dir = "");

struct OracleResult {
    double length{0.0};
    double theta{0.0};
    int hits{0};
    int fan_count{0};
};

/// Fan shooting + best-trace selection with scenario defaults; writes
/// geodesics.json when out_dir is nonempty. Throws NoGoalHitError.
/// `refine` additionally subdivides brackets around near-miss corridors
/// narrower than the fan spacing (see refine_fan); off by default.
OracleResult run_geodesic_oracle(const ScenarioConfig& sc, const std::string& out_dir = "",
                                 int fan_override = 0, double hit_radius_override = 0.0,
                                 bool refine = false);

struct RepeatResult {
    SummaryStats stats;
    std::vector<RunRecord> records;  // in seed order, failures included
};

/// Trials with seeds base_seed .. base_seed+trials-1; failed trials are
/// recorded and excluded from the stats. Writes runs.csv and boxplot.csv.
RepeatResult run_repeat(const ScenarioConfig& sc, CostBackend backend, int trials,
                        std::uint64_t base_seed, int n_override = 0,
                        const std::string& out_dir = "", bool parallel = true);

struct ConvergenceRow {
    int n_samples{0};
    int trials{0};
    double mean_h_length{0.0};
    double std_h_length{0.0};
    int failures{0};
};

std::vector<ConvergenceRow> run_convergence(const ScenarioConfig& sc, CostBackend backend,
                                            const std::vector<int>& n_list, int trials_per_n,
                                            std::uint64_t base_seed,
                                            const std::string& out_dir = "", bool parallel = true);

struct CompareRow {
    std::uint64_t seed{0};
    double riemannian_h{0.0};
    double euclidean_h{0.0};
    std::string status{"ok"};
};

struct CompareResult {
    std::vector<CompareRow> rows;
    double geodesic_length{0.0};  // 0 when the scenario fan produced no hit
};

/// Both planners per seed with identical N/eta, plus the scenario's geodesic
/// oracle length. Writes compare.csv.
CompareResult run_compare(const ScenarioConfig& sc, int n, const std::vector<std::uint64_t>& seeds,
                          const std::string& out_dir = "", bool parallel = true,
                          bool refine_oracle = false);

}  // namespace rrtr
