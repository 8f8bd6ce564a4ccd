#pragma once

#include <array>
#include <string>
#include <vector>

#include "rrtr/metric.hpp"

namespace rrtr {

struct GeodesicState {
    double x1{0.0};
    double x2{0.0};
    double y1{0.0};
    double y2{0.0};
};

enum class GeodesicTermination { GoalHit, LeftWorkspace, MaxLength };

std::string to_string(GeodesicTermination t);

struct WorkspaceBounds {
    double min1{0.0};
    double min2{0.0};
    double max1{0.0};
    double max2{0.0};

    bool contains(const PlanarPoint& p) const {
        return p.x1 >= min1 && p.x1 <= max1 && p.x2 >= min2 && p.x2 <= max2;
    }
};

struct GeodesicTrace {
    double theta{0.0};
    std::vector<GeodesicState> states;  // decimated by opts.record_stride; last state always kept
    double arc_length{0.0};
    GeodesicTermination termination{GeodesicTermination::MaxLength};
    double max_speed_drift{0.0};  // max relative drift of h-speed, tracked every step
    double closest_gap{0.0};      // min planar distance to the goal over the whole trace
};

struct GeodesicOptions {
    double step{1e-3};
    double max_length{40.0};
    WorkspaceBounds bounds{-1.0, -1.0, 11.0, 11.0};
    PlanarPoint goal{10.0, 10.0};
    double hit_radius{0.5};
    int record_stride{10};
};

struct FanSpec {
    double theta_min{0.0};
    double theta_max{1.5707963267948966};
    int count{200};
};

/// Right-hand side of the first-order geodesic system:
/// (y1, y2, -y1^2 G1_11 - 2 y1 y2 G1_12 - y2^2 G1_22, ... analogue for y2).
std::array<double, 4> geodesic_rhs(const ManifoldModel& m, const GeodesicState& s);

/// Classic fixed-step RK4 from `start` with h-unit initial velocity at angle
/// theta. Stops at the first of: goal disk entered, bounds left, arc length
/// exceeding max_length. Arc length accumulates the h-norm of each step's
/// planar displacement (metric taken at the step midpoint).
GeodesicTrace integrate_geodesic(const ManifoldModel& m, const PlanarPoint& start, double theta,
                                 const GeodesicOptions& opts);

/// One trace per equally spaced angle in [theta_min, theta_max].
std::vector<GeodesicTrace> shoot_fan(const ManifoldModel& m, const PlanarPoint& start,
                                     const FanSpec& fan, const GeodesicOptions& opts);

/// Serial reference for shoot_fan; must produce identical traces.
std::vector<GeodesicTrace> shoot_fan_serial(const ManifoldModel& m, const PlanarPoint& start,
                                            const FanSpec& fan, const GeodesicOptions& opts);

struct NoGoalHitError : std::runtime_error {
    NoGoalHitError() : std::runtime_error("no geodesic in the fan reached the goal disk") {}
};

/// Minimum-arc-length goal-hit trace; throws NoGoalHitError if none hit.
const GeodesicTrace& shortest_geodesic(const std::vector<GeodesicTrace>& traces);

struct FanRefineOptions {
    int rounds{7};     // bracket-subdivision passes
    int branches{16};  // sub-fan size per refined bracket
    int keep{32};      // local score minima refined per round (hits and misses each)
};

/// Optional sub-grid refinement: uniform fans cannot resolve goal corridors
/// narrower than their angular spacing, so this subdivides the brackets
/// around local minima of closest_gap (and around the best hits) until the
/// shortest hitting angle stops improving. Returns the refined traces only;
/// callers typically append them to the original fan. Off by default in the
/// harness.
std::vector<GeodesicTrace> refine_fan(const ManifoldModel& m, const PlanarPoint& start,
                                      const std::vector<GeodesicTrace>& fan_traces,
                                      const GeodesicOptions& opts,
                                      const FanRefineOptions& refine = {});

}  // namespace rrtr
