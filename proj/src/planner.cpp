#include "rrtr/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace rrtr {

namespace {

double dist2(const PlanarPoint& a, const PlanarPoint& b) {
    const double d1 = a.x1 - b.x1;
    const double d2 = a.x2 - b.x2;
    return d1 * d1 + d2 * d2;
}

double dist(const PlanarPoint& a, const PlanarPoint& b) { return std::sqrt(dist2(a, b)); }

bool segment_hits_circle(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& c,
                         double r) {
    const double abx = b.x1 - a.x1;
    const double aby = b.x2 - a.x2;
    const double len2 = abx * abx + aby * aby;
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((c.x1 - a.x1) * abx + (c.x2 - a.x2) * aby) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    const PlanarPoint q{a.x1 + t * abx, a.x2 + t * aby};
    return dist2(q, c) <= r * r;
}

// Liang-Barsky clip of the segment against the closed rectangle.
bool segment_hits_rect(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& lo,
                       const PlanarPoint& hi) {
    const double d1 = b.x1 - a.x1;
    const double d2 = b.x2 - a.x2;
    double t0 = 0.0, t1 = 1.0;
    const double p[4] = {-d1, d1, -d2, d2};
    const double q[4] = {a.x1 - lo.x1, hi.x1 - a.x1, a.x2 - lo.x2, hi.x2 - a.x2};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;  // parallel and outside the slab
        } else {
            const double t = q[i] / p[i];
            if (p[i] < 0.0) {
                if (t > t0) t0 = t;
            } else {
                if (t < t1) t1 = t;
            }
        }
    }
    return t0 <= t1;
}

}  // namespace

ObstacleRegion ObstacleRegion::circle(PlanarPoint c, double r) {
    if (r <= 0.0) throw std::invalid_argument("ObstacleRegion: radius must be > 0");
    ObstacleRegion o;
    o.kind = Kind::Circle;
    o.center = c;
    o.radius = r;
    return o;
}

ObstacleRegion ObstacleRegion::rect(PlanarPoint lo, PlanarPoint hi) {
    if (!(lo.x1 < hi.x1 && lo.x2 < hi.x2)) {
        throw std::invalid_argument("ObstacleRegion: rectangle min must be < max componentwise");
    }
    ObstacleRegion o;
    o.kind = Kind::Rect;
    o.rect_min = lo;
    o.rect_max = hi;
    return o;
}

bool ObstacleRegion::contains(const PlanarPoint& p) const {
    if (kind == Kind::Circle) return dist2(p, center) <= radius * radius;
    return p.x1 >= rect_min.x1 && p.x1 <= rect_max.x1 && p.x2 >= rect_min.x2 &&
           p.x2 <= rect_max.x2;
}

std::string to_string(CostBackend b) {
    return b == CostBackend::Riemannian ? "rrtstar-r" : "rrtstar-euclid";
}

std::optional<CostBackend> cost_backend_from_string(const std::string& s) {
    if (s == "rrtstar-r" || s == "riemannian") return CostBackend::Riemannian;
    if (s == "rrtstar-euclid" || s == "euclidean-lifted") return CostBackend::EuclideanLifted;
    return std::nullopt;
}

void PlannerConfig::validate() const {
    if (!(bounds.min1 < bounds.max1 && bounds.min2 < bounds.max2)) {
        throw std::invalid_argument("PlannerConfig: degenerate workspace bounds");
    }
    if (!bounds.contains(start) || !bounds.contains(goal)) {
        throw std::invalid_argument("PlannerConfig: start and goal must lie inside the bounds");
    }
    for (const auto& o : obstacles) {
        if (o.contains(start)) throw std::invalid_argument("PlannerConfig: start inside obstacle");
        if (o.contains(goal)) throw std::invalid_argument("PlannerConfig: goal inside obstacle");
    }
    if (n_samples < 1) throw std::invalid_argument("PlannerConfig: n_samples must be >= 1");
    if (eta <= 0.0) throw std::invalid_argument("PlannerConfig: eta must be > 0");
    if (gamma_near <= 0.0) throw std::invalid_argument("PlannerConfig: gamma_near must be > 0");
    if (goal_radius <= 0.0) throw std::invalid_argument("PlannerConfig: goal_radius must be > 0");
}

GridIndex::GridIndex(const WorkspaceBounds& bounds, double cell) : bounds_(bounds), cell_(cell) {
    if (cell <= 0.0) throw std::invalid_argument("GridIndex: cell size must be > 0");
    n1_ = std::max(1, static_cast<int>(std::ceil((bounds.max1 - bounds.min1) / cell)));
    n2_ = std::max(1, static_cast<int>(std::ceil((bounds.max2 - bounds.min2) / cell)));
    buckets_.resize(static_cast<std::size_t>(n1_) * n2_);
}

int GridIndex::cell_of(double x, double lo, int n) const {
    const int c = static_cast<int>(std::floor((x - lo) / cell_));
    return std::clamp(c, 0, n - 1);
}

void GridIndex::insert(int idx, const PlanarPoint& p) {
    const int c1 = cell_of(p.x1, bounds_.min1, n1_);
    const int c2 = cell_of(p.x2, bounds_.min2, n2_);
    buckets_[static_cast<std::size_t>(c2) * n1_ + c1].push_back(idx);
}

int GridIndex::nearest(const PlanarPoint& p, const std::vector<PlanarPoint>& pts) const {
    const int c1 = cell_of(p.x1, bounds_.min1, n1_);
    const int c2 = cell_of(p.x2, bounds_.min2, n2_);
    int best = -1;
    double best_d2 = 0.0;
    const int max_ring = std::max(n1_, n2_);
    for (int ring = 0; ring <= max_ring; ++ring) {
        // Points in ring k are at least (k-1)*cell away from p.
        if (best >= 0) {
            const double lower = (ring - 1) * cell_;
            if (lower > 0.0 && lower * lower > best_d2) break;
        }
        for (int j = c2 - ring; j <= c2 + ring; ++j) {
            if (j < 0 || j >= n2_) continue;
            for (int i = c1 - ring; i <= c1 + ring; ++i) {
                if (i < 0 || i >= n1_) continue;
                if (std::max(std::abs(i - c1), std::abs(j - c2)) != ring) continue;
                for (int idx : buckets_[static_cast<std::size_t>(j) * n1_ + i]) {
                    const double d2 = dist2(pts[idx], p);
                    if (best < 0 || d2 < best_d2 || (d2 == best_d2 && idx < best)) {
                        best = idx;
                        best_d2 = d2;
                    }
                }
            }
        }
    }
    return best;
}

int GridIndex::nearest_dominated(const PlanarPoint& p, const std::vector<PlanarPoint>& pts,
                                 const std::function<double(int)>& dist_fn) const {
    const int c1 = cell_of(p.x1, bounds_.min1, n1_);
    const int c2 = cell_of(p.x2, bounds_.min2, n2_);
    int best = -1;
    double best_d = 0.0;
    const int max_ring = std::max(n1_, n2_);
    for (int ring = 0; ring <= max_ring; ++ring) {
        // Points in ring k are at least (k-1)*cell away in the plane, and
        // the dominated distance is never smaller than the planar one.
        if (best >= 0) {
            const double lower = (ring - 1) * cell_;
            if (lower > 0.0 && lower > best_d) break;
        }
        for (int j = c2 - ring; j <= c2 + ring; ++j) {
            if (j < 0 || j >= n2_) continue;
            for (int i = c1 - ring; i <= c1 + ring; ++i) {
                if (i < 0 || i >= n1_) continue;
                if (std::max(std::abs(i - c1), std::abs(j - c2)) != ring) continue;
                for (int idx : buckets_[static_cast<std::size_t>(j) * n1_ + i]) {
                    const double d = dist_fn(idx);
                    if (best < 0 || d < best_d || (d == best_d && idx < best)) {
                        best = idx;
                        best_d = d;
                    }
                }
            }
        }
    }
    return best;
}

std::vector<int> GridIndex::within_dominated(const PlanarPoint& p, double radius,
                                             const std::vector<PlanarPoint>& pts,
                                             const std::function<double(int)>& dist_fn) const {
    std::vector<int> out;
    for (int idx : within(p, radius, pts)) {
        if (dist_fn(idx) <= radius) out.push_back(idx);
    }
    return out;
}

std::vector<int> GridIndex::within(const PlanarPoint& p, double radius,
                                   const std::vector<PlanarPoint>& pts) const {
    std::vector<int> out;
    if (radius <= 0.0) return out;
    const int c1 = cell_of(p.x1, bounds_.min1, n1_);
    const int c2 = cell_of(p.x2, bounds_.min2, n2_);
    const int reach = static_cast<int>(std::ceil(radius / cell_));
    const double r2 = radius * radius;
    for (int j = std::max(0, c2 - reach); j <= std::min(n2_ - 1, c2 + reach); ++j) {
        for (int i = std::max(0, c1 - reach); i <= std::min(n1_ - 1, c1 + reach); ++i) {
            for (int idx : buckets_[static_cast<std::size_t>(j) * n1_ + i]) {
                if (dist2(pts[idx], p) <= r2) out.push_back(idx);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double line_r_cost(const ManifoldModel& m, const PlanarPoint& v1, const PlanarPoint& v2) {
    const double d1 = v2.x1 - v1.x1;
    const double d2 = v2.x2 - v1.x2;
    static constexpr double w[5] = {7.0 / 90.0, 16.0 / 45.0, 2.0 / 15.0, 16.0 / 45.0, 7.0 / 90.0};
    double s = 0.0;
    for (int k = 0; k <= 4; ++k) {
        const double t = k / 4.0;
        const PlanarPoint pt{v1.x1 + t * d1, v1.x2 + t * d2};
        const MetricTensor2 h = metric_at(m, pt);
        const double q = h.h11 * d1 * d1 + 2.0 * h.h12 * d1 * d2 + h.h22 * d2 * d2;
        s += w[k] * std::sqrt(q > 0.0 ? q : 0.0);
    }
    return s;
}

double euclidean_lifted_cost(const ManifoldModel& m, const PlanarPoint& v1,
                             const PlanarPoint& v2) {
    const auto a = lift(m, v1);
    const auto b = lift(m, v2);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

EdgeCostFn make_edge_cost(const ManifoldModel& m, CostBackend backend) {
    if (backend == CostBackend::Riemannian) {
        return [&m](const PlanarPoint& a, const PlanarPoint& b) { return line_r_cost(m, a, b); };
    }
    return [&m](const PlanarPoint& a, const PlanarPoint& b) {
        return euclidean_lifted_cost(m, a, b);
    };
}

PlanarPoint sample(std::mt19937_64& rng, const WorkspaceBounds& bounds) {
    std::uniform_real_distribution<double> u1(bounds.min1, bounds.max1);
    std::uniform_real_distribution<double> u2(bounds.min2, bounds.max2);
    const double x1 = u1(rng);
    const double x2 = u2(rng);
    return {x1, x2};
}

int nearest(const PlanTree& tree, const PlanarPoint& p) {
    if (tree.vertices.empty()) throw std::invalid_argument("nearest: empty tree");
    int best = 0;
    double best_d2 = dist2(tree.vertices[0], p);
    for (int i = 1; i < static_cast<int>(tree.vertices.size()); ++i) {
        const double d2 = dist2(tree.vertices[i], p);
        if (d2 < best_d2) {
            best = i;
            best_d2 = d2;
        }
    }
    return best;
}

PlanarPoint steer(const PlanarPoint& v_from, const PlanarPoint& v_to, double eta) {
    if (eta <= 0.0) throw std::invalid_argument("steer: eta must be > 0");
    const double d = dist(v_from, v_to);
    if (d <= eta) return v_to;
    const double s = eta / d;
    return {v_from.x1 + s * (v_to.x1 - v_from.x1), v_from.x2 + s * (v_to.x2 - v_from.x2)};
}

bool obstacle_free(const PlanarPoint& v1, const PlanarPoint& v2,
                   const std::vector<ObstacleRegion>& obstacles) {
    for (const auto& o : obstacles) {
        if (o.kind == ObstacleRegion::Kind::Circle) {
            if (segment_hits_circle(v1, v2, o.center, o.radius)) return false;
        } else {
            if (segment_hits_rect(v1, v2, o.rect_min, o.rect_max)) return false;
        }
    }
    return true;
}

std::vector<int> near(const PlanTree& tree, const PlanarPoint& v_new, int cardinality, double eta,
                      double gamma_near) {
    if (cardinality < 1) throw std::invalid_argument("near: cardinality must be >= 1");
    const double r =
        std::min(gamma_near * std::sqrt(std::log(static_cast<double>(cardinality)) / cardinality),
                 eta);
    std::vector<int> out;
    const double r2 = r * r;
    for (int i = 0; i < static_cast<int>(tree.vertices.size()); ++i) {
        if (dist2(tree.vertices[i], v_new) <= r2) out.push_back(i);
    }
    return out;
}

namespace {

// Shared extension tail: best-parent selection among v_near, insertion, and
// rewiring with subtree cost propagation. cost_to/free_to measure the edge
// between an existing vertex and v_new under the active backend.
int attach_and_rewire(PlanTree& tree, GridIndex& index, const PlanarPoint& v_new, int i_nearest,
                      const std::vector<int>& v_near, const std::function<double(int)>& cost_to,
                      const std::function<bool(int)>& free_to) {
    std::unordered_map<int, double> edge_cache;
    std::unordered_map<int, bool> free_cache;
    const auto cached_cost = [&](int j) {
        auto it = edge_cache.find(j);
        if (it != edge_cache.end()) return it->second;
        const double c = cost_to(j);
        edge_cache.emplace(j, c);
        return c;
    };
    const auto cached_free = [&](int j) {
        auto it = free_cache.find(j);
        if (it != free_cache.end()) return it->second;
        const bool ok = free_to(j);
        free_cache.emplace(j, ok);
        return ok;
    };

    int v_min = i_nearest;
    double c_min = tree.cost[i_nearest] + cached_cost(i_nearest);
    for (int j : v_near) {
        if (j == i_nearest) continue;
        if (!cached_free(j)) continue;
        const double c = tree.cost[j] + cached_cost(j);
        if (c < c_min) {
            v_min = j;
            c_min = c;
        }
    }

    const int idx = static_cast<int>(tree.vertices.size());
    tree.vertices.push_back(v_new);
    tree.parent.push_back(v_min);
    tree.cost.push_back(c_min);
    tree.children.emplace_back();
    tree.children[v_min].push_back(idx);
    index.insert(idx, v_new);

    // Rewire: re-parent any near vertex whose cost strictly improves
    // through v_new, then push the cost delta down its subtree.
    for (int j : v_near) {
        if (j == v_min) continue;
        if (!cached_free(j)) continue;
        const double c_through = c_min + cached_cost(j);
        if (c_through < tree.cost[j]) {
            const double delta = c_through - tree.cost[j];
            auto& sibs = tree.children[tree.parent[j]];
            sibs.erase(std::find(sibs.begin(), sibs.end(), j));
            tree.parent[j] = idx;
            tree.children[idx].push_back(j);
            std::vector<int> stack{j};
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                tree.cost[v] += delta;
                for (int ch : tree.children[v]) stack.push_back(ch);
            }
        }
    }
    return idx;
}

}  // namespace

int extend(PlanTree& tree, GridIndex& index, const PlanarPoint& v_rand, const PlannerConfig& cfg,
           const EdgeCostFn& edge_cost) {
    const int i_nearest = index.nearest(v_rand, tree.vertices);
    const PlanarPoint v_new = steer(tree.vertices[i_nearest], v_rand, cfg.eta);
    if (dist2(tree.vertices[i_nearest], v_new) < 1e-24) return -1;  // sample on a vertex
    if (!obstacle_free(tree.vertices[i_nearest], v_new, cfg.obstacles)) return -1;

    const int card = static_cast<int>(tree.vertices.size());
    const double r = std::min(
        cfg.gamma_near * std::sqrt(std::log(static_cast<double>(card)) / card), cfg.eta);
    const std::vector<int> v_near = index.within(v_new, r, tree.vertices);

    return attach_and_rewire(
        tree, index, v_new, i_nearest, v_near,
        [&](int j) { return edge_cost(tree.vertices[j], v_new); },
        [&](int j) { return obstacle_free(tree.vertices[j], v_new, cfg.obstacles); });
}

namespace {

double chord(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Baseline extension variant: the tree lives in the lifted space, so
// Nearest/Near/steer all measure ambient chord distance (which dominates the
// planar one, keeping the planar grid bounds valid), and edges cost their
// ambient chord length.
int extend_ambient(PlanTree& tree, GridIndex& index, std::vector<std::vector<double>>& lifts,
                   const PlanarPoint& v_rand, const PlannerConfig& cfg, const ManifoldModel& m) {
    const std::vector<double> l_rand = lift(m, v_rand);
    const int i_nearest = index.nearest_dominated(
        v_rand, tree.vertices, [&](int j) { return chord(lifts[j], l_rand); });
    const double d_nearest = chord(lifts[i_nearest], l_rand);
    PlanarPoint v_new = v_rand;
    if (d_nearest > cfg.eta) {
        const double t = cfg.eta / d_nearest;
        const PlanarPoint& from = tree.vertices[i_nearest];
        v_new = {from.x1 + t * (v_rand.x1 - from.x1), from.x2 + t * (v_rand.x2 - from.x2)};
    }
    if (dist2(tree.vertices[i_nearest], v_new) < 1e-24) return -1;  // sample on a vertex
    if (!obstacle_free(tree.vertices[i_nearest], v_new, cfg.obstacles)) return -1;

    const std::vector<double> l_new = lift(m, v_new);
    const int card = static_cast<int>(tree.vertices.size());
    const double r = std::min(
        cfg.gamma_near * std::sqrt(std::log(static_cast<double>(card)) / card), cfg.eta);
    const std::vector<int> v_near = index.within_dominated(
        v_new, r, tree.vertices, [&](int j) { return chord(lifts[j], l_new); });

    const int idx = attach_and_rewire(
        tree, index, v_new, i_nearest, v_near, [&](int j) { return chord(lifts[j], l_new); },
        [&](int j) { return obstacle_free(tree.vertices[j], v_new, cfg.obstacles); });
    if (idx >= 0) lifts.push_back(l_new);
    return idx;
}

}  // namespace

PlanResult plan(const ManifoldModel& m, const PlannerConfig& cfg) {
    cfg.validate();
    const EdgeCostFn edge_cost = make_edge_cost(m, cfg.backend);

    PlanResult res;
    PlanTree& tree = res.tree;
    tree.vertices.push_back(cfg.start);
    tree.parent.push_back(-1);
    tree.cost.push_back(0.0);
    tree.children.emplace_back();

    GridIndex index(cfg.bounds, cfg.eta);
    index.insert(0, cfg.start);

    std::mt19937_64 rng(cfg.seed);
    if (cfg.backend == CostBackend::EuclideanLifted) {
        std::vector<std::vector<double>> lifts{lift(m, cfg.start)};
        for (int i = 0; i < cfg.n_samples; ++i) {
            const PlanarPoint v_rand = sample(rng, cfg.bounds);
            extend_ambient(tree, index, lifts, v_rand, cfg, m);
        }
    } else {
        for (int i = 0; i < cfg.n_samples; ++i) {
            const PlanarPoint v_rand = sample(rng, cfg.bounds);
            extend(tree, index, v_rand, cfg, edge_cost);
        }
    }

    // Goal extraction: among goal-disk vertices with a free connecting
    // segment, pick the one minimizing total cost through to the goal; the
    // goal point is appended so lengths are measured start-to-goal.
    int best = -1;
    double best_total = 0.0;
    double best_goal_edge = 0.0;
    bool best_connects = false;
    const double gr2 = cfg.goal_radius * cfg.goal_radius;
    for (int i = 0; i < static_cast<int>(tree.vertices.size()); ++i) {
        if (dist2(tree.vertices[i], cfg.goal) > gr2) continue;
        const bool connects = obstacle_free(tree.vertices[i], cfg.goal, cfg.obstacles);
        const double goal_edge = connects ? edge_cost(tree.vertices[i], cfg.goal) : 0.0;
        const double total = tree.cost[i] + goal_edge;
        // A vertex that reaches the goal outranks any that cannot.
        if (best < 0 || (connects && !best_connects) ||
            (connects == best_connects && total < best_total)) {
            best = i;
            best_total = total;
            best_goal_edge = goal_edge;
            best_connects = connects;
        }
    }
    if (best < 0) throw GoalNotReachedError();

    std::vector<int> chain;
    for (int v = best; v >= 0; v = tree.parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    for (int v : chain) {
        res.path.push_back(tree.vertices[v]);
        res.path_cost.push_back(tree.cost[v]);
    }
    if (best_connects && dist2(tree.vertices[best], cfg.goal) > 0.0) {
        res.path.push_back(cfg.goal);
        res.path_cost.push_back(tree.cost[best] + best_goal_edge);
    }

    res.backend_cost = res.path_cost.back();
    res.h_length = res.path.size() >= 2 ? curve_length(m, res.path, 16) : 0.0;
    for (std::size_t i = 0; i + 1 < res.path.size(); ++i) {
        res.lifted_length += euclidean_lifted_cost(m, res.path[i], res.path[i + 1]);
    }
    return res;
}

}  // namespace rrtr
