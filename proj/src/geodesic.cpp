#include "rrtr/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rrtr {

std::string to_string(GeodesicTermination t) {
    switch (t) {
        case GeodesicTermination::GoalHit: return "goal-hit";
        case GeodesicTermination::LeftWorkspace: return "left-workspace";
        case GeodesicTermination::MaxLength: return "max-length";
    }
    return "unknown";
}

std::array<double, 4> geodesic_rhs(const ManifoldModel& m, const GeodesicState& s) {
    const ChristoffelSymbols c = christoffel_at(m, {s.x1, s.x2});
    const double y1 = s.y1;
    const double y2 = s.y2;
    return {y1, y2,
            -y1 * y1 * c.g1_11 - 2.0 * y1 * y2 * c.g1_12 - y2 * y2 * c.g1_22,
            -y1 * y1 * c.g2_11 - 2.0 * y1 * y2 * c.g2_12 - y2 * y2 * c.g2_22};
}

namespace {

GeodesicState rk4_step(const ManifoldModel& m, const GeodesicState& s, double dt) {
    const auto k1 = geodesic_rhs(m, s);
    const GeodesicState s2{s.x1 + 0.5 * dt * k1[0], s.x2 + 0.5 * dt * k1[1],
                           s.y1 + 0.5 * dt * k1[2], s.y2 + 0.5 * dt * k1[3]};
    const auto k2 = geodesic_rhs(m, s2);
    const GeodesicState s3{s.x1 + 0.5 * dt * k2[0], s.x2 + 0.5 * dt * k2[1],
                           s.y1 + 0.5 * dt * k2[2], s.y2 + 0.5 * dt * k2[3]};
    const auto k3 = geodesic_rhs(m, s3);
    const GeodesicState s4{s.x1 + dt * k3[0], s.x2 + dt * k3[1],
                           s.y1 + dt * k3[2], s.y2 + dt * k3[3]};
    const auto k4 = geodesic_rhs(m, s4);
    const double w = dt / 6.0;
    return {s.x1 + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s.x2 + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            s.y1 + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
            s.y2 + w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])};
}

bool in_goal_disk(const PlanarPoint& p, const PlanarPoint& goal, double r) {
    const double d1 = p.x1 - goal.x1;
    const double d2 = p.x2 - goal.x2;
    return d1 * d1 + d2 * d2 <= r * r;
}

}  // namespace

GeodesicTrace integrate_geodesic(const ManifoldModel& m, const PlanarPoint& start, double theta,
                                 const GeodesicOptions& opts) {
    if (opts.step <= 0.0) throw std::invalid_argument("integrate_geodesic: step must be > 0");
    if (opts.hit_radius <= 0.0) {
        throw std::invalid_argument("integrate_geodesic: hit_radius must be > 0");
    }
    const int stride = opts.record_stride >= 1 ? opts.record_stride : 1;

    const Vec2 dir{std::cos(theta), std::sin(theta)};
    const double speed0 = tangent_norm(m, start, dir);
    GeodesicState s{start.x1, start.x2, dir.v1 / speed0, dir.v2 / speed0};

    GeodesicTrace tr;
    tr.theta = theta;
    tr.states.push_back(s);
    tr.termination = GeodesicTermination::MaxLength;
    tr.closest_gap = std::hypot(start.x1 - opts.goal.x1, start.x2 - opts.goal.x2);

    // Closest approach to the goal seen while inside the hit disk. A hit is
    // reported at that state, with the remaining straight gap to the goal
    // added in h-length, so lengths are measured start-to-goal.
    bool entered_disk = false;
    double best_gap2 = std::numeric_limits<double>::infinity();
    GeodesicState best_state{};
    double best_arc = 0.0;
    std::size_t best_state_count = 0;

    const auto finish_hit = [&]() {
        while (tr.states.size() > best_state_count) tr.states.pop_back();
        if (tr.states.empty() || tr.states.back().x1 != best_state.x1 ||
            tr.states.back().x2 != best_state.x2) {
            tr.states.push_back(best_state);
        }
        const Vec2 gap{opts.goal.x1 - best_state.x1, opts.goal.x2 - best_state.x2};
        const PlanarPoint mid{best_state.x1 + 0.5 * gap.v1, best_state.x2 + 0.5 * gap.v2};
        tr.arc_length = best_arc + tangent_norm(m, mid, gap);
        tr.termination = GeodesicTermination::GoalHit;
    };

    long step_index = 0;
    while (tr.arc_length < opts.max_length) {
        const GeodesicState next = rk4_step(m, s, opts.step);
        const PlanarPoint mid{0.5 * (s.x1 + next.x1), 0.5 * (s.x2 + next.x2)};
        tr.arc_length += tangent_norm(m, mid, {next.x1 - s.x1, next.x2 - s.x2});
        s = next;
        ++step_index;

        const double speed = tangent_norm(m, {s.x1, s.x2}, {s.y1, s.y2});
        const double drift = std::abs(speed - 1.0);
        if (drift > tr.max_speed_drift) tr.max_speed_drift = drift;

        const PlanarPoint p{s.x1, s.x2};
        if (step_index % stride == 0) tr.states.push_back(s);

        const double g1 = p.x1 - opts.goal.x1;
        const double g2 = p.x2 - opts.goal.x2;
        const double gap = std::hypot(g1, g2);
        if (gap < tr.closest_gap) tr.closest_gap = gap;

        if (in_goal_disk(p, opts.goal, opts.hit_radius)) {
            entered_disk = true;
            const double gap2 = g1 * g1 + g2 * g2;
            if (gap2 < best_gap2) {
                best_gap2 = gap2;
                best_state = s;
                best_arc = tr.arc_length;
                best_state_count = tr.states.size();
            } else {
                finish_hit();
                return tr;
            }
        } else if (entered_disk) {
            finish_hit();
            return tr;
        }
        if (!opts.bounds.contains(p)) {
            if (tr.states.back().x1 != s.x1 || tr.states.back().x2 != s.x2) tr.states.push_back(s);
            tr.termination = GeodesicTermination::LeftWorkspace;
            return tr;
        }
    }
    if (entered_disk) {
        finish_hit();
        return tr;
    }
    if (tr.states.back().x1 != s.x1 || tr.states.back().x2 != s.x2) tr.states.push_back(s);
    return tr;
}

std::vector<GeodesicTrace> shoot_fan_serial(const ManifoldModel& m, const PlanarPoint& start,
                                            const FanSpec& fan, const GeodesicOptions& opts) {
    if (fan.count < 2) throw std::invalid_argument("shoot_fan: count must be >= 2");
    if (!(fan.theta_min < fan.theta_max)) {
        throw std::invalid_argument("shoot_fan: theta_min must be < theta_max");
    }
    std::vector<GeodesicTrace> out(fan.count);
    const double dtheta = (fan.theta_max - fan.theta_min) / (fan.count - 1);
    for (int i = 0; i < fan.count; ++i) {
        out[i] = integrate_geodesic(m, start, fan.theta_min + i * dtheta, opts);
    }
    return out;
}

std::vector<GeodesicTrace> shoot_fan(const ManifoldModel& m, const PlanarPoint& start,
                                     const FanSpec& fan, const GeodesicOptions& opts) {
    if (fan.count < 2) throw std::invalid_argument("shoot_fan: count must be >= 2");
    if (!(fan.theta_min < fan.theta_max)) {
        throw std::invalid_argument("shoot_fan: theta_min must be < theta_max");
    }
    std::vector<GeodesicTrace> out(fan.count);
    const double dtheta = (fan.theta_max - fan.theta_min) / (fan.count - 1);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < fan.count; ++i) {
        out[i] = integrate_geodesic(m, start, fan.theta_min + i * dtheta, opts);
    }
    return out;
}

std::vector<GeodesicTrace> refine_fan(const ManifoldModel& m, const PlanarPoint& start,
                                      const std::vector<GeodesicTrace>& fan_traces,
                                      const GeodesicOptions& opts,
                                      const FanRefineOptions& refine) {
    if (refine.rounds < 1 || refine.branches < 3 || refine.keep < 1) {
        throw std::invalid_argument("refine_fan: rounds >= 1, branches >= 3, keep >= 1 required");
    }
    // Angle -> score used to pick brackets: hitting traces are ranked by
    // arc length, non-hitting ones by how close they came to the goal.
    struct Probe {
        double theta;
        double score;
    };
    const auto score_of = [](const GeodesicTrace& tr) {
        return tr.termination == GeodesicTermination::GoalHit ? tr.arc_length
                                                              : 1e9 + tr.closest_gap;
    };

    std::vector<Probe> probes;
    probes.reserve(fan_traces.size());
    for (const auto& tr : fan_traces) probes.push_back({tr.theta, score_of(tr)});
    std::sort(probes.begin(), probes.end(),
              [](const Probe& a, const Probe& b) { return a.theta < b.theta; });

    GeodesicOptions sub_opts = opts;
    sub_opts.record_stride = 1 << 30;  // refinement probes only need endpoints

    std::vector<GeodesicTrace> refined;
    for (int round = 0; round < refine.rounds; ++round) {
        // Brackets around local minima of the score. Hitting and non-hitting
        // minima are ranked separately so that near-miss corridors keep
        // getting subdivided even once some basin already produces hits.
        std::vector<std::size_t> hit_minima;
        std::vector<std::size_t> miss_minima;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const bool left_ok = i == 0 || probes[i].score <= probes[i - 1].score;
            const bool right_ok = i + 1 == probes.size() || probes[i].score <= probes[i + 1].score;
            if (!(left_ok && right_ok)) continue;
            (probes[i].score < 1e9 ? hit_minima : miss_minima).push_back(i);
        }
        const auto by_score = [&](std::size_t a, std::size_t b) {
            return probes[a].score < probes[b].score;
        };
        std::sort(hit_minima.begin(), hit_minima.end(), by_score);
        std::sort(miss_minima.begin(), miss_minima.end(), by_score);
        const auto cap = static_cast<std::size_t>(refine.keep);
        if (hit_minima.size() > cap) hit_minima.resize(cap);
        if (miss_minima.size() > cap) miss_minima.resize(cap);

        std::vector<std::size_t> minima = hit_minima;
        minima.insert(minima.end(), miss_minima.begin(), miss_minima.end());

        std::vector<double> thetas;
        for (const std::size_t i : minima) {
            const double lo = probes[i > 0 ? i - 1 : i].theta;
            const double hi = probes[i + 1 < probes.size() ? i + 1 : i].theta;
            if (!(lo < hi)) continue;
            for (int b = 1; b < refine.branches; ++b) {
                thetas.push_back(lo + (hi - lo) * b / refine.branches);
            }
        }
        std::sort(thetas.begin(), thetas.end());
        thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
        if (thetas.empty()) break;

        std::vector<GeodesicTrace> round_traces(thetas.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(thetas.size()); ++i) {
            round_traces[i] = integrate_geodesic(m, start, thetas[i], sub_opts);
        }
        for (auto& tr : round_traces) {
            probes.push_back({tr.theta, score_of(tr)});
            refined.push_back(std::move(tr));
        }
        std::sort(probes.begin(), probes.end(),
                  [](const Probe& a, const Probe& b) { return a.theta < b.theta; });
    }
    return refined;
}

const GeodesicTrace& shortest_geodesic(const std::vector<GeodesicTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("shortest_geodesic: empty trace list");
    const GeodesicTrace* best = nullptr;
    for (const auto& tr : traces) {
        if (tr.termination != GeodesicTermination::GoalHit) continue;
        if (best == nullptr || tr.arc_length < best->arc_length) best = &tr;
    }
    if (best == nullptr) throw NoGoalHitError();
    return *best;
}

}  // namespace rrtr
