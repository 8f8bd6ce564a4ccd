#include "rrtr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace rrtr {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

SummaryStats summarize(std::vector<double> values, int failures) {
    SummaryStats s;
    s.failures = failures;
    s.trials = static_cast<int>(values.size());
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    const auto quantile = [&](double p) {
        const double pos = p * (values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - lo;
        return values[lo] + frac * (values[hi] - values[lo]);
    };
    s.min = values.front();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    s.max = values.back();
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
    return s;
}

namespace {

constexpr const char* kRunsHeader =
    "scenario,algorithm,seed,n_samples,h_length,lifted_length,backend_cost,nodes,wall_ms,status";

std::string run_record_row(const RunRecord& r) {
    std::string row = r.scenario + "," + r.algorithm + "," + std::to_string(r.seed) + "," +
                      std::to_string(r.n_samples) + "," + format_g9(r.h_length) + "," +
                      format_g9(r.lifted_length) + "," + format_g9(r.backend_cost) + "," +
                      std::to_string(r.nodes) + "," + format_g9(r.wall_ms) + "," + r.status;
    return row;
}

void append_runs_csv(const std::string& out_dir, const std::vector<RunRecord>& records) {
    const fs::path path = fs::path(out_dir) / "runs.csv";
    const bool fresh = !fs::exists(path);
    fs::create_directories(out_dir);
    std::ofstream out(path, std::ios::app);
    if (fresh) out << kRunsHeader << "\n";
    for (const auto& r : records) out << run_record_row(r) << "\n";
}

json polyline_json(const std::vector<PlanarPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(json::array({p.x1, p.x2}));
    return arr;
}

void write_path_json(const std::string& out_dir, const ScenarioConfig& sc, CostBackend backend,
                     std::uint64_t seed, const PlanResult& res) {
    const ManifoldModel m = sc.model();
    json j;
    j["scenario"] = sc.name;
    j["algorithm"] = to_string(backend);
    j["seed"] = seed;
    j["planar_polyline"] = polyline_json(res.path);
    json lifted = json::array();
    for (const auto& p : res.path) lifted.push_back(lift(m, p));
    j["lifted_polyline"] = lifted;
    j["cumulative_cost"] = res.path_cost;
    j["h_length"] = res.h_length;
    j["backend_cost"] = res.backend_cost;
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "path.json");
    out << j.dump(2) << "\n";
}

RunRecord run_one(const ScenarioConfig& sc, CostBackend backend, std::uint64_t seed,
                  int n_override, PlanResult* out_result) {
    const ManifoldModel m = sc.model();
    const PlannerConfig pc = sc.planner_config(backend, seed, n_override);
    RunRecord rec;
    rec.scenario = sc.name;
    rec.algorithm = to_string(backend);
    rec.seed = seed;
    rec.n_samples = pc.n_samples;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        PlanResult res = plan(m, pc);
        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rec.h_length = res.h_length;
        rec.lifted_length = res.lifted_length;
        rec.backend_cost = res.backend_cost;
        rec.nodes = static_cast<int>(res.tree.vertices.size());
        if (out_result != nullptr) *out_result = std::move(res);
    } catch (const GoalNotReachedError&) {
        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rec.status = "goal-not-reached";
    }
    return rec;
}

}  // namespace

RunRecord run_single(const ScenarioConfig& sc, CostBackend backend, std::uint64_t seed,
                     int n_override, const std::string& out_dir) {
    PlanResult res;
    RunRecord rec = run_one(sc, backend, seed, n_override, &res);
    if (rec.status != "ok") throw GoalNotReachedError();
    if (!out_dir.empty()) {
        write_path_json(out_dir, sc, backend, seed, res);
        append_runs_csv(out_dir, {rec});
    }
    return rec;
}

OracleResult run_geodesic_oracle(const ScenarioConfig& sc, const std::string& out_dir,
                                 int fan_override, double hit_radius_override, bool refine) {
    const ManifoldModel m = sc.model();
    FanSpec fan = sc.fan_spec();
    if (fan_override > 1) fan.count = fan_override;
    GeodesicOptions opts = sc.geodesic_options();
    if (hit_radius_override > 0.0) opts.hit_radius = hit_radius_override;
    auto traces = shoot_fan(m, sc.start, fan, opts);
    if (refine) {
        auto extra = refine_fan(m, sc.start, traces, opts);
        traces.reserve(traces.size() + extra.size());
        for (auto& tr : extra) traces.push_back(std::move(tr));
    }

    if (!out_dir.empty()) {
        json arr = json::array();
        for (const auto& tr : traces) {
            std::vector<PlanarPoint> poly;
            const std::size_t stride = std::max<std::size_t>(1, tr.states.size() / 256);
            for (std::size_t i = 0; i < tr.states.size(); i += stride) {
                poly.push_back({tr.states[i].x1, tr.states[i].x2});
            }
            if (poly.back().x1 != tr.states.back().x1 || poly.back().x2 != tr.states.back().x2) {
                poly.push_back({tr.states.back().x1, tr.states.back().x2});
            }
            arr.push_back({{"angle", tr.theta},
                           {"termination", to_string(tr.termination)},
                           {"length", tr.arc_length},
                           {"polyline", polyline_json(poly)}});
        }
        json j;
        j["scenario"] = sc.name;
        j["fan_count"] = fan.count;
        j["traces"] = arr;
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "geodesics.json");
        out << j.dump(2) << "\n";
    }

    const GeodesicTrace& best = shortest_geodesic(traces);  // throws NoGoalHitError
    OracleResult res;
    res.length = best.arc_length;
    res.theta = best.theta;
    res.fan_count = fan.count;
    for (const auto& tr : traces) {
        if (tr.termination == GeodesicTermination::GoalHit) ++res.hits;
    }
    return res;
}

RepeatResult run_repeat(const ScenarioConfig& sc, CostBackend backend, int trials,
                        std::uint64_t base_seed, int n_override, const std::string& out_dir,
                        bool parallel) {
    if (trials < 1) throw std::invalid_argument("run_repeat: trials must be >= 1");
    RepeatResult res;
    res.records.resize(trials);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) {
            res.records[t] = run_one(sc, backend, base_seed + t, n_override, nullptr);
        }
    } else {
        for (int t = 0; t < trials; ++t) {
            res.records[t] = run_one(sc, backend, base_seed + t, n_override, nullptr);
        }
    }
    std::vector<double> lengths;
    int failures = 0;
    for (const auto& r : res.records) {
        if (r.status == "ok") {
            lengths.push_back(r.h_length);
        } else {
            ++failures;
        }
    }
    res.stats = summarize(std::move(lengths), failures);

    if (!out_dir.empty()) {
        append_runs_csv(out_dir, res.records);
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "boxplot.csv");
        out << "trials,min,q1,median,q3,max,mean,std,failures\n";
        const auto& s = res.stats;
        out << s.trials << "," << format_g9(s.min) << "," << format_g9(s.q1) << ","
            << format_g9(s.median) << "," << format_g9(s.q3) << "," << format_g9(s.max) << ","
            << format_g9(s.mean) << "," << format_g9(s.std) << "," << s.failures << "\n";
    }
    return res;
}

std::vector<ConvergenceRow> run_convergence(const ScenarioConfig& sc, CostBackend backend,
                                            const std::vector<int>& n_list, int trials_per_n,
                                            std::uint64_t base_seed, const std::string& out_dir,
                                            bool parallel) {
    if (n_list.empty()) throw std::invalid_argument("run_convergence: empty n_list");
    if (!std::is_sorted(n_list.begin(), n_list.end())) {
        throw std::invalid_argument("run_convergence: n_list must be ascending");
    }
    const int total = static_cast<int>(n_list.size()) * trials_per_n;
    std::vector<RunRecord> records(total);
    const auto job = [&](int k) {
        const int ni = k / trials_per_n;
        const int t = k % trials_per_n;
        records[k] = run_one(sc, backend, base_seed + t, n_list[ni], nullptr);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < total; ++k) job(k);
    } else {
        for (int k = 0; k < total; ++k) job(k);
    }

    std::vector<ConvergenceRow> rows;
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        std::vector<double> lengths;
        int failures = 0;
        for (int t = 0; t < trials_per_n; ++t) {
            const auto& r = records[ni * trials_per_n + t];
            if (r.status == "ok") {
                lengths.push_back(r.h_length);
            } else {
                ++failures;
            }
        }
        const SummaryStats s = summarize(std::move(lengths), failures);
        rows.push_back({n_list[ni], s.trials, s.mean, s.std, failures});
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "convergence.csv");
        out << "n_samples,trials,mean_h_length,std_h_length,failures\n";
        for (const auto& r : rows) {
            out << r.n_samples << "," << r.trials << "," << format_g9(r.mean_h_length) << ","
                << format_g9(r.std_h_length) << "," << r.failures << "\n";
        }
    }
    return rows;
}

CompareResult run_compare(const ScenarioConfig& sc, int n,
                          const std::vector<std::uint64_t>& seeds, const std::string& out_dir,
                          bool parallel, bool refine_oracle) {
    CompareResult res;
    try {
        res.geodesic_length = run_geodesic_oracle(sc, "", 0, 0.0, refine_oracle).length;
    } catch (const NoGoalHitError&) {
        res.geodesic_length = 0.0;
    }
    const int count = static_cast<int>(seeds.size());
    res.rows.resize(count);
    const auto job = [&](int i) {
        const RunRecord a = run_one(sc, CostBackend::Riemannian, seeds[i], n, nullptr);
        const RunRecord b = run_one(sc, CostBackend::EuclideanLifted, seeds[i], n, nullptr);
        CompareRow row;
        row.seed = seeds[i];
        row.riemannian_h = a.h_length;
        row.euclidean_h = b.h_length;
        if (a.status != "ok" || b.status != "ok") row.status = "goal-not-reached";
        res.rows[i] = row;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) job(i);
    } else {
        for (int i = 0; i < count; ++i) job(i);
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "compare.csv");
        out << "seed,rrtstar_r_h_length,rrtstar_euclid_h_length,geodesic_length,status\n";
        for (const auto& r : res.rows) {
            out << r.seed << "," << format_g9(r.riemannian_h) << "," << format_g9(r.euclidean_h)
                << "," << format_g9(res.geodesic_length) << "," << r.status << "\n";
        }
    }
    return res;
}

}  // namespace rrtr
