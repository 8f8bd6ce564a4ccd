// Benchmark comparing the serial reference against the OpenMP-parallel
// implementations of fan shooting and batch planner trials.

#include <chrono>
#include <cstdio>

#include "rrtr/harness.hpp"

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    using namespace rrtr;

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");

    {
        const ScenarioConfig sc = scenario_preset("peak3-3d");
        const ManifoldModel m = sc.model();
        const GeodesicOptions opts = sc.geodesic_options();
        const FanSpec fan = sc.fan_spec();
        double best_s = 0.0, best_p = 0.0;
        const double ts =
            time_ms([&] { best_s = shortest_geodesic(shoot_fan_serial(m, sc.start, fan, opts)).arc_length; });
        const double tp =
            time_ms([&] { best_p = shortest_geodesic(shoot_fan(m, sc.start, fan, opts)).arc_length; });
        std::printf("%-28s %12.1f %12.1f %7.2fx   (best %.5f / %.5f)\n", "shoot_fan peak3-3d x400",
                    ts, tp, ts / tp, best_s, best_p);
    }

    {
        const ScenarioConfig sc = scenario_preset("peak1-3d");
        const int trials = 8;
        const int n = 4000;
        RepeatResult rs, rp;
        const double ts = time_ms(
            [&] { rs = run_repeat(sc, CostBackend::Riemannian, trials, 1, n, "", false); });
        const double tp = time_ms(
            [&] { rp = run_repeat(sc, CostBackend::Riemannian, trials, 1, n, "", true); });
        std::printf("%-28s %12.1f %12.1f %7.2fx   (mean %.5f / %.5f)\n", "run_repeat peak1-3d x8",
                    ts, tp, ts / tp, rs.stats.mean, rp.stats.mean);
    }

    return 0;
}
