#pragma once

#include <stdexcept>
#include <vector>

namespace rrtr {

struct PlanarPoint {
    double x1{0.0};
    double x2{0.0};
};

struct Vec2 {
    double v1{0.0};
    double v2{0.0};
};

/// Symmetric 2x2 matrix of second partials.
struct SymMat2 {
    double m11{0.0};
    double m12{0.0};
    double m22{0.0};
};

/// A*exp[-a1(x1-c1)^2 - a2(x2-c2)^2] with a1, a2 > 0.
struct GaussianBump {
    double amplitude{0.0};
    double c1{0.0};
    double c2{0.0};
    double a1{1.0};
    double a2{1.0};

    GaussianBump() = default;
    GaussianBump(double amplitude_, double c1_, double c2_, double a1_, double a2_)
        : amplitude(amplitude_), c1(c1_), c2(c2_), a1(a1_), a2(a2_) {
        if (a1 <= 0.0 || a2 <= 0.0) {
            throw std::invalid_argument("GaussianBump: decay rates must be strictly positive");
        }
    }

    /// Isotropic bump, the only family the experiments use.
    static GaussianBump isotropic(double amplitude, double c1, double c2, double a) {
        return GaussianBump(amplitude, c1, c2, a, a);
    }
};

/// Sum of Gaussian bumps; an empty sum is the zero field. Smooth on all of
/// R^2 with analytic gradient and Hessian. Immutable after construction.
class ScalarField2D {
  public:
    ScalarField2D() = default;
    explicit ScalarField2D(std::vector<GaussianBump> bumps) : bumps_(std::move(bumps)) {}

    const std::vector<GaussianBump>& bumps() const { return bumps_; }

    double value(const PlanarPoint& p) const;
    Vec2 gradient(const PlanarPoint& p) const;
    SymMat2 hessian(const PlanarPoint& p) const;

  private:
    std::vector<GaussianBump> bumps_;
};

double eval_field(const ScalarField2D& f, const PlanarPoint& p);
Vec2 grad_field(const ScalarField2D& f, const PlanarPoint& p);
SymMat2 hessian_field(const ScalarField2D& f, const PlanarPoint& p);

}  // namespace rrtr
