#include "rrtr/metric.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace rrtr {

MetricTensor2 metric_at(const ManifoldModel& m, const PlanarPoint& p) {
    MetricTensor2 h;
    for (const auto& f : m.fields()) {
        const Vec2 g = f.gradient(p);
        h.h11 += g.v1 * g.v1;
        h.h12 += g.v1 * g.v2;
        h.h22 += g.v2 * g.v2;
    }
    h.det = h.h11 * h.h22 - h.h12 * h.h12;
    return h;
}

MetricTensor2 inverse_metric(const MetricTensor2& h) {
    const double d = detail::clamp_det(h.det);
    MetricTensor2 inv;
    inv.h11 = h.h22 / d;
    inv.h12 = -h.h12 / d;
    inv.h22 = h.h11 / d;
    inv.det = inv.h11 * inv.h22 - inv.h12 * inv.h12;
    return inv;
}

std::vector<double> lift(const ManifoldModel& m, const PlanarPoint& p) {
    std::vector<double> q;
    q.reserve(m.ambient_dim());
    q.push_back(p.x1);
    q.push_back(p.x2);
    for (const auto& f : m.fields()) {
        q.push_back(f.value(p));
    }
    return q;
}

std::vector<double> pushforward(const ManifoldModel& m, const PlanarPoint& p, const Vec2& v) {
    std::vector<double> w;
    w.reserve(m.ambient_dim());
    w.push_back(v.v1);
    w.push_back(v.v2);
    for (const auto& f : m.fields()) {
        const Vec2 g = f.gradient(p);
        w.push_back(v.v1 * g.v1 + v.v2 * g.v2);
    }
    return w;
}

double tangent_norm(const ManifoldModel& m, const PlanarPoint& p, const Vec2& v) {
    const MetricTensor2 h = metric_at(m, p);
    const double q = h.h11 * v.v1 * v.v1 + 2.0 * h.h12 * v.v1 * v.v2 + h.h22 * v.v2 * v.v2;
    return std::sqrt(q > 0.0 ? q : 0.0);
}

ChristoffelSymbols christoffel_at(const ManifoldModel& m, const PlanarPoint& p) {
    // a_ij = sum_k d1(x_k) * d_ij(x_k), b_ij = sum_k d2(x_k) * d_ij(x_k)
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
    double b11 = 0.0, b12 = 0.0, b22 = 0.0;
    double s11 = 0.0, s12 = 0.0, s22 = 0.0;  // gradient outer-product sums
    for (const auto& f : m.fields()) {
        const Vec2 g = f.gradient(p);
        const SymMat2 hs = f.hessian(p);
        s11 += g.v1 * g.v1;
        s12 += g.v1 * g.v2;
        s22 += g.v2 * g.v2;
        a11 += g.v1 * hs.m11;
        a12 += g.v1 * hs.m12;
        a22 += g.v1 * hs.m22;
        b11 += g.v2 * hs.m11;
        b12 += g.v2 * hs.m12;
        b22 += g.v2 * hs.m22;
    }
    const double h11 = 1.0 + s11;
    const double h12 = s12;
    const double h22 = 1.0 + s22;
    const double d = detail::clamp_det(h11 * h22 - h12 * h12);

    ChristoffelSymbols c;
    c.g1_11 = (h22 * a11 - h12 * b11) / d;
    c.g2_11 = (-h12 * a11 + h11 * b11) / d;
    c.g1_12 = (h22 * a12 - h12 * b12) / d;
    c.g2_12 = (-h12 * a12 + h11 * b12) / d;
    c.g1_22 = (h22 * a22 - h12 * b22) / d;
    c.g2_22 = (-h12 * a22 + h11 * b22) / d;
    return c;
}

namespace {

// 5-point Gauss-Legendre nodes/weights on [0, 1].
constexpr std::array<double, 5> kGlNodes = {
    0.04691007703066800360, 0.23076534494715845448, 0.5,
    0.76923465505284154552, 0.95308992296933199640};
constexpr std::array<double, 5> kGlWeights = {
    0.11846344252809454375, 0.23931433524968323402, 0.28444444444444444444,
    0.23931433524968323402, 0.11846344252809454375};

}  // namespace

double curve_length(const ManifoldModel& m, const std::vector<PlanarPoint>& path, int refinement) {
    if (path.size() < 2) {
        throw std::invalid_argument("curve_length: polyline needs at least two points");
    }
    if (refinement < 1) {
        throw std::invalid_argument("curve_length: refinement must be >= 1");
    }
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const PlanarPoint& a = path[s];
        const PlanarPoint& b = path[s + 1];
        const Vec2 dv{b.x1 - a.x1, b.x2 - a.x2};
        if (dv.v1 == 0.0 && dv.v2 == 0.0) continue;
        const double panel = 1.0 / refinement;
        for (int k = 0; k < refinement; ++k) {
            double acc = 0.0;
            for (int q = 0; q < 5; ++q) {
                const double t = (k + kGlNodes[q]) * panel;
                const PlanarPoint pt{a.x1 + t * dv.v1, a.x2 + t * dv.v2};
                acc += kGlWeights[q] * tangent_norm(m, pt, dv);
            }
            total += acc * panel;
        }
    }
    return total;
}

}  // namespace rrtr
