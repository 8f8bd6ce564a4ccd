#pragma once

#include <string>
#include <vector>

#include "rrtr/planner.hpp"

namespace rrtr {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A named environment plus planner and geodesic defaults. Serializes to a
/// versioned JSON document; parse(serialize(s)) == s.
struct ScenarioConfig {
    std::string name;
    WorkspaceBounds bounds{-1.0, -1.0, 11.0, 11.0};
    PlanarPoint start{0.0, 0.0};
    PlanarPoint goal{10.0, 10.0};
    double goal_radius{0.5};
    std::vector<ScalarField2D> fields;  // x3, x4, ... in order
    std::vector<ObstacleRegion> obstacles;
    // planner defaults
    int n_samples{10000};
    double eta{0.5};
    double gamma_near{15.0};
    // geodesic defaults
    int fan_count{200};
    double geodesic_step{1e-3};
    double max_length{40.0};
    double theta_min{0.0};
    double theta_max{1.5707963267948966};

    ManifoldModel model() const { return ManifoldModel(fields); }
    PlannerConfig planner_config(CostBackend backend, std::uint64_t seed, int n) const;
    GeodesicOptions geodesic_options() const;
    FanSpec fan_spec() const { return {theta_min, theta_max, fan_count}; }
};

std::vector<std::string> scenario_preset_names();

/// Throws ScenarioError for unknown names.
ScenarioConfig scenario_preset(const std::string& name);

std::string serialize_scenario(const ScenarioConfig& cfg);

/// Parses and validates; throws ScenarioError with a field diagnostic.
ScenarioConfig parse_scenario(const std::string& json_text);

/// Preset name or path to a JSON scenario file.
ScenarioConfig load_scenario(const std::string& name_or_path);

}  // namespace rrtr
