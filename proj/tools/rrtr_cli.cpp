#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrtr/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitGoalNotReached = 3;
constexpr int kExitOracleNoHit = 4;

struct CommonOpts {
    std::string scenario = "flat";
    std::string algo = "rrtstar-r";
    int samples = 0;  // 0 = scenario default
    std::uint64_t seed = 1;
    double eta = 0.0;  // 0 = scenario default
    std::string out_dir = "out";
    int trials = 10;
    int fan_count = 0;
    double hit_radius = 0.0;
    bool refine = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--scenario", o.scenario, "Preset name or scenario JSON file");
    cmd->add_option("--algo", o.algo, "rrtstar-r or rrtstar-euclid");
    cmd->add_option("--samples", o.samples, "Sample count N (0 = scenario default)");
    cmd->add_option("--seed", o.seed, "RNG seed (base seed for batch commands)");
    cmd->add_option("--eta", o.eta, "Steer step (0 = scenario default)");
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--trials", o.trials, "Trial count for batch commands");
    cmd->add_option("--fan-count", o.fan_count, "Geodesic fan size (0 = scenario default)");
    cmd->add_option("--hit-radius", o.hit_radius, "Goal-hit radius (0 = scenario default)");
    cmd->add_flag("--refine", o.refine,
                  "Subdivide fan brackets around near-miss corridors (geodesic/compare)");
}

rrtr::ScenarioConfig load(const CommonOpts& o) {
    rrtr::ScenarioConfig sc = rrtr::load_scenario(o.scenario);
    if (o.eta > 0.0) sc.eta = o.eta;
    if (o.hit_radius > 0.0) sc.goal_radius = o.hit_radius;
    return sc;
}

rrtr::CostBackend backend_of(const CommonOpts& o) {
    const auto b = rrtr::cost_backend_from_string(o.algo);
    if (!b) throw rrtr::ScenarioError("unknown algorithm '" + o.algo + "'");
    return *b;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riemannian-metric RRT* planner and experiment harness"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string command;
    std::string n_list_arg = "2000,4000,6000,8000,10000,12000,14000,16000,18000,20000";

    for (const char* name : {"plan", "geodesic", "repeat", "converge", "compare", "scenarios"}) {
        CLI::App* cmd = app.add_subcommand(name);
        if (std::string(name) != "scenarios") add_common(cmd, opts);
        if (std::string(name) == "converge") {
            cmd->add_option("--n-list", n_list_arg, "Comma-separated ascending sample counts");
        }
        cmd->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (command == "scenarios") {
            for (const auto& n : rrtr::scenario_preset_names()) std::cout << n << "\n";
            return kExitOk;
        }

        const rrtr::ScenarioConfig sc = load(opts);

        if (command == "plan") {
            try {
                const rrtr::RunRecord rec =
                    rrtr::run_single(sc, backend_of(opts), opts.seed, opts.samples, opts.out_dir);
                std::cout << "scenario=" << rec.scenario << " algo=" << rec.algorithm
                          << " seed=" << rec.seed << " n=" << rec.n_samples
                          << " h_length=" << rrtr::format_g9(rec.h_length)
                          << " backend_cost=" << rrtr::format_g9(rec.backend_cost)
                          << " nodes=" << rec.nodes << "\n";
            } catch (const rrtr::GoalNotReachedError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitGoalNotReached;
            }
        } else if (command == "geodesic") {
            try {
                const rrtr::OracleResult res =
                    rrtr::run_geodesic_oracle(sc, opts.out_dir, opts.fan_count, 0.0, opts.refine);
                std::cout << "scenario=" << sc.name << " fan=" << res.fan_count
                          << " hits=" << res.hits << " best_theta=" << rrtr::format_g9(res.theta)
                          << " best_length=" << rrtr::format_g9(res.length) << "\n";
            } catch (const rrtr::NoGoalHitError& e) {
                std::cerr << "error: " << e.what() << " (try a larger --fan-count)\n";
                return kExitOracleNoHit;
            }
        } else if (command == "repeat") {
            const rrtr::RepeatResult res = rrtr::run_repeat(sc, backend_of(opts), opts.trials,
                                                            opts.seed, opts.samples, opts.out_dir);
            const auto& s = res.stats;
            std::cout << "trials=" << s.trials << " failures=" << s.failures
                      << " median=" << rrtr::format_g9(s.median)
                      << " iqr=" << rrtr::format_g9(s.q3 - s.q1)
                      << " mean=" << rrtr::format_g9(s.mean) << " std=" << rrtr::format_g9(s.std)
                      << "\n";
        } else if (command == "converge") {
            std::vector<int> n_list;
            std::stringstream ss(n_list_arg);
            for (std::string tok; std::getline(ss, tok, ',');) n_list.push_back(std::stoi(tok));
            const auto rows = rrtr::run_convergence(sc, backend_of(opts), n_list, opts.trials,
                                                    opts.seed, opts.out_dir);
            for (const auto& r : rows) {
                std::cout << "n=" << r.n_samples << " mean=" << rrtr::format_g9(r.mean_h_length)
                          << " std=" << rrtr::format_g9(r.std_h_length)
                          << " failures=" << r.failures << "\n";
            }
        } else if (command == "compare") {
            std::vector<std::uint64_t> seeds;
            for (int i = 0; i < opts.trials; ++i) seeds.push_back(opts.seed + i);
            const auto res = rrtr::run_compare(sc, opts.samples, seeds, opts.out_dir, true,
                                               opts.refine);
            for (const auto& r : res.rows) {
                std::cout << "seed=" << r.seed << " rrtstar-r=" << rrtr::format_g9(r.riemannian_h)
                          << " rrtstar-euclid=" << rrtr::format_g9(r.euclidean_h)
                          << " geodesic=" << rrtr::format_g9(res.geodesic_length) << " "
                          << r.status << "\n";
            }
        }
    } catch (const rrtr::ScenarioError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
