#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rrtr/geodesic.hpp"
#include "rrtr/metric.hpp"

namespace rrtr {

struct ObstacleRegion {
    enum class Kind { Circle, Rect };
    Kind kind{Kind::Circle};
    // circle
    PlanarPoint center{};
    double radius{0.0};
    // axis-aligned rectangle
    PlanarPoint rect_min{};
    PlanarPoint rect_max{};

    static ObstacleRegion circle(PlanarPoint c, double r);
    static ObstacleRegion rect(PlanarPoint lo, PlanarPoint hi);

    bool contains(const PlanarPoint& p) const;
};

enum class CostBackend { Riemannian, EuclideanLifted };

std::string to_string(CostBackend b);
std::optional<CostBackend> cost_backend_from_string(const std::string& s);

struct PlannerConfig {
    WorkspaceBounds bounds{-1.0, -1.0, 11.0, 11.0};
    PlanarPoint start{0.0, 0.0};
    PlanarPoint goal{10.0, 10.0};
    double goal_radius{0.5};
    int n_samples{10000};
    double eta{0.5};
    double gamma_near{15.0};
    std::uint64_t seed{0};
    std::vector<ObstacleRegion> obstacles;
    CostBackend backend{CostBackend::Riemannian};

    void validate() const;  // throws std::invalid_argument
};

/// Rooted tree over planar vertices; vertex 0 is the root with cost 0.
struct PlanTree {
    std::vector<PlanarPoint> vertices;
    std::vector<int> parent;                 // -1 for the root
    std::vector<double> cost;                // cost-to-root under the active backend
    std::vector<std::vector<int>> children;  // for subtree cost propagation on rewire
};

/// Uniform grid bucket index over the workspace, cell size eta.
class GridIndex {
  public:
    GridIndex(const WorkspaceBounds& bounds, double cell);

    void insert(int idx, const PlanarPoint& p);
    /// Lowest-index vertex at minimum Euclidean distance.
    int nearest(const PlanarPoint& p, const std::vector<PlanarPoint>& pts) const;
    /// Indices within `radius` of p, ascending. Requires radius <= cell size.
    std::vector<int> within(const PlanarPoint& p, double radius,
                            const std::vector<PlanarPoint>& pts) const;

    /// Variants for a distance that dominates the planar one
    /// (dist_fn(i) >= |pts[i] - p| for all i), e.g. an ambient lifted
    /// distance: the planar ring/cell bounds then remain valid pruning.
    int nearest_dominated(const PlanarPoint& p, const std::vector<PlanarPoint>& pts,
                          const std::function<double(int)>& dist_fn) const;
    std::vector<int> within_dominated(const PlanarPoint& p, double radius,
                                      const std::vector<PlanarPoint>& pts,
                                      const std::function<double(int)>& dist_fn) const;

  private:
    int cell_of(double x, double lo, int n) const;

    WorkspaceBounds bounds_;
    double cell_;
    int n1_, n2_;
    std::vector<std::vector<int>> buckets_;
};

using EdgeCostFn = std::function<double(const PlanarPoint&, const PlanarPoint&)>;

/// 5-point Newton-Cotes (Boole) approximation of the h-length of the
/// straight planar segment v1 -> v2.
double line_r_cost(const ManifoldModel& m, const PlanarPoint& v1, const PlanarPoint& v2);

/// Baseline edge cost: ambient chord distance between the lifted endpoints.
double euclidean_lifted_cost(const ManifoldModel& m, const PlanarPoint& v1, const PlanarPoint& v2);

PlanarPoint sample(std::mt19937_64& rng, const WorkspaceBounds& bounds);

int nearest(const PlanTree& tree, const PlanarPoint& p);

PlanarPoint steer(const PlanarPoint& v_from, const PlanarPoint& v_to, double eta);

bool obstacle_free(const PlanarPoint& v1, const PlanarPoint& v2,
                   const std::vector<ObstacleRegion>& obstacles);

/// Radius min(gamma_near * sqrt(log(card)/card), eta) around v_new.
std::vector<int> near(const PlanTree& tree, const PlanarPoint& v_new, int cardinality, double eta,
                      double gamma_near);

/// One planner extension: steer, best-parent selection, rewiring. Returns the index
/// of the added vertex, or -1 if the extension was blocked.
int extend(PlanTree& tree, GridIndex& index, const PlanarPoint& v_rand, const PlannerConfig& cfg,
           const EdgeCostFn& edge_cost);

struct GoalNotReachedError : std::runtime_error {
    GoalNotReachedError() : std::runtime_error("no tree vertex inside the goal disk") {}
};

struct PlanResult {
    PlanTree tree;
    std::vector<PlanarPoint> path;       // root -> best goal-disk vertex
    std::vector<double> path_cost;       // cumulative backend cost along path
    double backend_cost{0.0};            // cost of the best goal-disk vertex
    double h_length{0.0};                // curve_length of the path polyline
    double lifted_length{0.0};           // chordal Euclidean length of the lifted path
};

/// N iterations of sample + extend, then extraction of the
/// minimum-cost vertex inside the goal disk. Throws GoalNotReachedError.
PlanResult plan(const ManifoldModel& m, const PlannerConfig& cfg);

EdgeCostFn make_edge_cost(const ManifoldModel& m, CostBackend backend);

}  // namespace rrtr
