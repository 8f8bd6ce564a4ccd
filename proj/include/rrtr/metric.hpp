#pragma once

#include <vector>

#include "rrtr/fields.hpp"

namespace rrtr {

/// Pullback metric at a point: h11 >= 1, h22 >= 1, det >= 1.
struct MetricTensor2 {
    double h11{1.0};
    double h12{0.0};
    double h22{1.0};
    double det{1.0};
};

/// The six independent connection coefficients; lower indices symmetric.
struct ChristoffelSymbols {
    double g1_11{0.0};
    double g2_11{0.0};
    double g1_12{0.0};
    double g2_12{0.0};
    double g1_22{0.0};
    double g2_22{0.0};
};

/// Embedding s(x1,x2) = (x1, x2, x3(x1,x2), ..., xn(x1,x2)). An empty field
/// list is the flat plane (n = 2).
class ManifoldModel {
  public:
    ManifoldModel() = default;
    explicit ManifoldModel(std::vector<ScalarField2D> fields) : fields_(std::move(fields)) {}

    const std::vector<ScalarField2D>& fields() const { return fields_; }
    int ambient_dim() const { return 2 + static_cast<int>(fields_.size()); }

  private:
    std::vector<ScalarField2D> fields_;
};

MetricTensor2 metric_at(const ManifoldModel& m, const PlanarPoint& p);

/// (1/d)[[h22,-h12],[-h12,h11]]; det of the returned tensor is 1/d.
MetricTensor2 inverse_metric(const MetricTensor2& h);

std::vector<double> lift(const ManifoldModel& m, const PlanarPoint& p);

/// v1*(1,0,dx3/dx1,...) + v2*(0,1,dx3/dx2,...).
std::vector<double> pushforward(const ManifoldModel& m, const PlanarPoint& p, const Vec2& v);

double tangent_norm(const ManifoldModel& m, const PlanarPoint& p, const Vec2& v);

ChristoffelSymbols christoffel_at(const ManifoldModel& m, const PlanarPoint& p);

/// h-length of a piecewise-linear polyline by composite 5-point
/// Gauss-Legendre quadrature, `refinement` panels per segment. Higher order
/// than the planner's Newton-Cotes rule, so it can serve as its oracle.
double curve_length(const ManifoldModel& m, const std::vector<PlanarPoint>& path, int refinement);

namespace detail {
/// Floor used before dividing by det; analytically det >= 1.
inline double clamp_det(double d) { return d > 1e-15 ? d : 1e-15; }
}  // namespace detail

}  // namespace rrtr
