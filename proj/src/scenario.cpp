#include "rrtr/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rrtr {

using nlohmann::json;

PlannerConfig ScenarioConfig::planner_config(CostBackend backend, std::uint64_t seed,
                                             int n) const {
    PlannerConfig pc;
    pc.bounds = bounds;
    pc.start = start;
    pc.goal = goal;
    pc.goal_radius = goal_radius;
    pc.n_samples = n > 0 ? n : n_samples;
    pc.eta = eta;
    pc.gamma_near = gamma_near;
    pc.seed = seed;
    pc.obstacles = obstacles;
    pc.backend = backend;
    return pc;
}

GeodesicOptions ScenarioConfig::geodesic_options() const {
    GeodesicOptions opts;
    opts.step = geodesic_step;
    opts.max_length = max_length;
    opts.bounds = bounds;
    opts.goal = goal;
    opts.hit_radius = goal_radius;
    return opts;
}

namespace {

ScalarField2D isotropic_sum(std::initializer_list<std::array<double, 4>> bumps) {
    std::vector<GaussianBump> bs;
    for (const auto& [amp, c1, c2, a] : bumps) bs.push_back(GaussianBump::isotropic(amp, c1, c2, a));
    return ScalarField2D(std::move(bs));
}

ScenarioConfig base_scenario(std::string name) {
    ScenarioConfig s;
    s.name = std::move(name);
    return s;
}

}  // namespace

std::vector<std::string> scenario_preset_names() {
    return {"flat", "peak1-3d", "peak3-3d", "peak6-4d", "repeat-3d", "repeat-4d"};
}

ScenarioConfig scenario_preset(const std::string& name) {
    if (name == "flat") {
        return base_scenario("flat");
    }
    if (name == "peak1-3d") {
        auto s = base_scenario("peak1-3d");
        s.fields.push_back(isotropic_sum({{5.0, 5.0, 5.0, 0.1}}));
        s.fan_count = 200;
        return s;
    }
    if (name == "peak3-3d") {
        auto s = base_scenario("peak3-3d");
        s.fields.push_back(isotropic_sum(
            {{7.0, 3.0, 3.0, 0.5}, {6.0, 7.0, 3.0, 0.5}, {5.0, 5.0, 7.0, 0.5}}));
        s.fan_count = 400;
        return s;
    }
    if (name == "peak6-4d") {
        auto s = base_scenario("peak6-4d");
        s.fields.push_back(isotropic_sum({{5.0, 3.0, 3.0, 0.5},
                                          {5.0, 7.0, 3.0, 0.5},
                                          {5.0, 3.0, 7.0, 0.5},
                                          {5.0, 7.0, 7.0, 0.5}}));
        s.fields.push_back(isotropic_sum({{3.0, 5.0, 8.0, 0.5}, {3.0, 5.0, 2.0, 0.5}}));
        s.fan_count = 600;
        return s;
    }
    if (name == "repeat-3d") {
        auto s = base_scenario("repeat-3d");
        s.fields.push_back(isotropic_sum({{5.0, 5.0, 8.0, 0.5},
                                          {5.0, 8.0, 5.0, 0.5},
                                          {5.0, 2.0, 2.0, 0.5},
                                          {5.0, 8.0, 2.0, 0.5}}));
        s.fan_count = 600;
        return s;
    }
    if (name == "repeat-4d") {
        auto s = scenario_preset("repeat-3d");
        s.name = "repeat-4d";
        s.fields.push_back(isotropic_sum({{3.0, 2.0, 8.0, 0.5},
                                          {3.0, 8.0, 8.0, 0.5},
                                          {7.0, 5.0, 5.0, 0.5}}));
        return s;
    }
    throw ScenarioError("unknown scenario preset '" + name + "'");
}

namespace {

constexpr int kSchemaVersion = 1;

json point_json(const PlanarPoint& p) { return json::array({p.x1, p.x2}); }

PlanarPoint point_from(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ScenarioError("scenario field '" + field + "' must be a [x1, x2] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double number_from(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number()) {
        throw ScenarioError("scenario field '" + field + "' missing or not a number");
    }
    return j[field].get<double>();
}

}  // namespace

std::string serialize_scenario(const ScenarioConfig& cfg) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = cfg.name;
    j["bounds"] = {{"min", json::array({cfg.bounds.min1, cfg.bounds.min2})},
                   {"max", json::array({cfg.bounds.max1, cfg.bounds.max2})}};
    j["start"] = point_json(cfg.start);
    j["goal"] = point_json(cfg.goal);
    j["goal_radius"] = cfg.goal_radius;
    j["fields"] = json::array();
    for (const auto& f : cfg.fields) {
        json bumps = json::array();
        for (const auto& b : f.bumps()) {
            bumps.push_back({{"amplitude", b.amplitude},
                             {"center", json::array({b.c1, b.c2})},
                             {"decay", json::array({b.a1, b.a2})}});
        }
        j["fields"].push_back({{"bumps", bumps}});
    }
    j["obstacles"] = json::array();
    for (const auto& o : cfg.obstacles) {
        if (o.kind == ObstacleRegion::Kind::Circle) {
            j["obstacles"].push_back(
                {{"type", "circle"}, {"center", point_json(o.center)}, {"radius", o.radius}});
        } else {
            j["obstacles"].push_back({{"type", "rect"},
                                      {"min", point_json(o.rect_min)},
                                      {"max", point_json(o.rect_max)}});
        }
    }
    j["planner"] = {{"n_samples", cfg.n_samples}, {"eta", cfg.eta}, {"gamma_near", cfg.gamma_near}};
    j["geodesic"] = {{"fan_count", cfg.fan_count},
                     {"step", cfg.geodesic_step},
                     {"max_length", cfg.max_length},
                     {"theta_min", cfg.theta_min},
                     {"theta_max", cfg.theta_max}};
    return j.dump(2) + "\n";
}

ScenarioConfig parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion) {
        throw ScenarioError("scenario missing or unsupported schema_version");
    }
    ScenarioConfig s;
    if (!j.contains("name") || !j["name"].is_string()) {
        throw ScenarioError("scenario field 'name' missing or not a string");
    }
    s.name = j["name"].get<std::string>();
    if (!j.contains("bounds") || !j["bounds"].contains("min") || !j["bounds"].contains("max")) {
        throw ScenarioError("scenario field 'bounds' must contain 'min' and 'max'");
    }
    const PlanarPoint bmin = point_from(j["bounds"]["min"], "bounds.min");
    const PlanarPoint bmax = point_from(j["bounds"]["max"], "bounds.max");
    s.bounds = {bmin.x1, bmin.x2, bmax.x1, bmax.x2};
    s.start = point_from(j.at("start"), "start");
    s.goal = point_from(j.at("goal"), "goal");
    s.goal_radius = number_from(j, "goal_radius");

    for (const auto& fj : j.value("fields", json::array())) {
        std::vector<GaussianBump> bumps;
        for (const auto& bj : fj.value("bumps", json::array())) {
            const PlanarPoint c = point_from(bj.at("center"), "fields[].bumps[].center");
            const PlanarPoint a = point_from(bj.at("decay"), "fields[].bumps[].decay");
            const double amp = number_from(bj, "amplitude");
            if (a.x1 <= 0.0 || a.x2 <= 0.0) {
                throw ScenarioError("scenario bump decay rates must be strictly positive");
            }
            bumps.emplace_back(amp, c.x1, c.x2, a.x1, a.x2);
        }
        s.fields.emplace_back(std::move(bumps));
    }
    for (const auto& oj : j.value("obstacles", json::array())) {
        const std::string type = oj.value("type", "");
        if (type == "circle") {
            s.obstacles.push_back(
                ObstacleRegion::circle(point_from(oj.at("center"), "obstacles[].center"),
                                       number_from(oj, "radius")));
        } else if (type == "rect") {
            s.obstacles.push_back(ObstacleRegion::rect(point_from(oj.at("min"), "obstacles[].min"),
                                                       point_from(oj.at("max"), "obstacles[].max")));
        } else {
            throw ScenarioError("scenario obstacle type must be 'circle' or 'rect'");
        }
    }
    const json& pj = j.at("planner");
    s.n_samples = static_cast<int>(number_from(pj, "n_samples"));
    s.eta = number_from(pj, "eta");
    s.gamma_near = number_from(pj, "gamma_near");
    const json& gj = j.at("geodesic");
    s.fan_count = static_cast<int>(number_from(gj, "fan_count"));
    s.geodesic_step = number_from(gj, "step");
    s.max_length = number_from(gj, "max_length");
    s.theta_min = number_from(gj, "theta_min");
    s.theta_max = number_from(gj, "theta_max");

    if (s.n_samples < 1 || s.eta <= 0.0 || s.gamma_near <= 0.0 || s.goal_radius <= 0.0 ||
        s.fan_count < 2 || s.geodesic_step <= 0.0 || s.max_length <= 0.0) {
        throw ScenarioError("scenario defaults must be positive");
    }
    // Reuse the planner validation for bounds/obstacle placement of start and goal.
    try {
        s.planner_config(CostBackend::Riemannian, 0, 0).validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("scenario validation: ") + e.what());
    }
    return s;
}

ScenarioConfig load_scenario(const std::string& name_or_path) {
    const auto presets = scenario_preset_names();
    if (std::find(presets.begin(), presets.end(), name_or_path) != presets.end()) {
        return scenario_preset(name_or_path);
    }
    if (!std::filesystem::exists(name_or_path)) {
        throw ScenarioError("scenario '" + name_or_path + "' is neither a preset nor a file");
    }
    std::ifstream in(name_or_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace rrtr
