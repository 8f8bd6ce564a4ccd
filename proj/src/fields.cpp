#include "rrtr/fields.hpp"

#include <cmath>

namespace rrtr {

double ScalarField2D::value(const PlanarPoint& p) const {
    double sum = 0.0;
    for (const auto& b : bumps_) {
        const double d1 = p.x1 - b.c1;
        const double d2 = p.x2 - b.c2;
        sum += b.amplitude * std::exp(-b.a1 * d1 * d1 - b.a2 * d2 * d2);
    }
    return sum;
}

Vec2 ScalarField2D::gradient(const PlanarPoint& p) const {
    Vec2 g;
    for (const auto& b : bumps_) {
        const double d1 = p.x1 - b.c1;
        const double d2 = p.x2 - b.c2;
        const double v = b.amplitude * std::exp(-b.a1 * d1 * d1 - b.a2 * d2 * d2);
        g.v1 += -2.0 * b.a1 * d1 * v;
        g.v2 += -2.0 * b.a2 * d2 * v;
    }
    return g;
}

SymMat2 ScalarField2D::hessian(const PlanarPoint& p) const {
    SymMat2 h;
    for (const auto& b : bumps_) {
        const double d1 = p.x1 - b.c1;
        const double d2 = p.x2 - b.c2;
        const double v = b.amplitude * std::exp(-b.a1 * d1 * d1 - b.a2 * d2 * d2);
        h.m11 += (4.0 * b.a1 * b.a1 * d1 * d1 - 2.0 * b.a1) * v;
        h.m22 += (4.0 * b.a2 * b.a2 * d2 * d2 - 2.0 * b.a2) * v;
        h.m12 += 4.0 * b.a1 * b.a2 * d1 * d2 * v;
    }
    return h;
}

double eval_field(const ScalarField2D& f, const PlanarPoint& p) { return f.value(p); }
Vec2 grad_field(const ScalarField2D& f, const PlanarPoint& p) { return f.gradient(p); }
SymMat2 hessian_field(const ScalarField2D& f, const PlanarPoint& p) { return f.hessian(p); }

}  // namespace rrtr
