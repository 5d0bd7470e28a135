#include "circq/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "circq/error.hpp"

namespace circq {

double max_abs(const Tensor3& t) noexcept {
    double m = 0.0;
    for (const auto& a : t)
        for (const auto& b : a)
            for (double v : b) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const Tensor4& t) noexcept {
    double m = 0.0;
    for (const auto& a : t) m = std::max(m, max_abs(a));
    return m;
}

ChristoffelAtPoint christoffel(const MetricAtPoint& m) {
    const InverseMetricAtPoint inv = inverse_metric(m);

    // Christoffel symbols of the first kind and their derivatives.
    Tensor3 first{};        // [a][i][j]
    Tensor4 dfirst{};       // [l][a][i][j]
    Tensor3 dginv{};        // [l][s][a]
    for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                first[a][i][j] = 0.5 * (m.dg(i, a, j) + m.dg(j, a, i) - m.dg(a, i, j));
                for (int l = 0; l < 4; ++l)
                    dfirst[l][a][i][j] = 0.5 * (m.ddg(l, i, a, j) + m.ddg(l, j, a, i) - m.ddg(l, a, i, j));
            }
    for (int l = 0; l < 4; ++l)
        for (int s = 0; s < 4; ++s)
            for (int a = 0; a < 4; ++a) {
                double sum = 0.0;
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 4; ++c) sum += inv.ginv(s, b) * m.dg(l, b, c) * inv.ginv(c, a);
                dginv[l][s][a] = -sum;
            }

    ChristoffelAtPoint ch;
    for (int s = 0; s < 4; ++s)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                double g = 0.0;
                for (int a = 0; a < 4; ++a) g += inv.ginv(s, a) * first[a][i][j];
                ch.gamma[s][i][j] = ch.gamma[s][j][i] = g;
                for (int l = 0; l < 4; ++l) {
                    double dg = 0.0;
                    for (int a = 0; a < 4; ++a)
                        dg += dginv[l][s][a] * first[a][i][j] + inv.ginv(s, a) * dfirst[l][a][i][j];
                    ch.dgamma[l][s][i][j] = ch.dgamma[l][s][j][i] = dg;
                }
            }
    return ch;
}

ChristoffelAtPoint christoffel_at(const ManifoldSpec& spec, const Point& p) {
    return christoffel(metric_at(spec, p));
}

Tensor3 christoffel_unsymmetrized(const MetricAtPoint& m) {
    const InverseMetricAtPoint inv = inverse_metric(m);
    Tensor3 out{};
    for (int s = 0; s < 4; ++s)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = 0.0;
                for (int a = 0; a < 4; ++a)
                    v += inv.ginv(a, s) * (m.dg(i, a, j) + m.dg(j, a, i) - m.dg(a, i, j));
                out[s][i][j] = 0.5 * v;
            }
    return out;
}

RiemannAtPoint riemann(const MetricAtPoint& m, const ChristoffelAtPoint& ch) {
    RiemannAtPoint r;
    Tensor4 terms{};  // magnitude of the terms of R^l_ijk
    for (int l = 0; l < 4; ++l)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    double v = ch.dgamma[i][l][j][k] - ch.dgamma[j][l][i][k];
                    double t = std::abs(ch.dgamma[i][l][j][k]) + std::abs(ch.dgamma[j][l][i][k]);
                    for (int a = 0; a < 4; ++a) {
                        const double p1 = ch.gamma[l][i][a] * ch.gamma[a][j][k];
                        const double p2 = ch.gamma[l][j][a] * ch.gamma[a][i][k];
                        v += p1 - p2;
                        t += std::abs(p1) + std::abs(p2);
                    }
                    r.r_mixed[l][i][j][k] = v;
                    terms[l][i][j][k] = t;
                    r.mixed_term_scale = std::max(r.mixed_term_scale, t);
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double v = 0.0;
                    double t = 0.0;
                    for (int a = 0; a < 4; ++a) {
                        v += m.g(a, l) * r.r_mixed[a][i][j][k];
                        t += std::abs(m.g(a, l)) * terms[a][i][j][k];
                    }
                    r.r_low[i][j][k][l] = v;
                    r.term_scale = std::max(r.term_scale, t);
                }
    return r;
}

RiemannAtPoint riemann_at(const ManifoldSpec& spec, const Point& p) {
    const MetricAtPoint m = metric_at(spec, p);
    return riemann(m, christoffel(m));
}

double riemann_contract(const RiemannAtPoint& r, const Vector4& x, const Vector4& y, const Vector4& z,
                        const Vector4& u) noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) sum += r.r_low[i][j][k][l] * x[i] * y[j] * z[k] * u[l];
    return sum;
}

double riemann_contract_scale(const RiemannAtPoint& r, const Vector4& x, const Vector4& y, const Vector4& z,
                              const Vector4& u) noexcept {
    return std::max(r.term_scale, r.max_abs()) * x.l1_norm() * y.l1_norm() * z.l1_norm() * u.l1_norm();
}

double sectional_curvature(const RiemannAtPoint& r, const MetricAtPoint& m, const Vector4& x, const Vector4& y) {
    const double xx = inner(m, x, x);
    const double yy = inner(m, y, y);
    const double xy = inner(m, x, y);
    const double denom = xx * yy - xy * xy;
    const double nx = x.euclidean_norm();
    const double ny = y.euclidean_norm();
    if (!(denom > 1e-12 * nx * nx * ny * ny)) throw InvalidArgument("vectors do not span a 2-plane");
    return riemann_contract(r, x, y, x, y) / denom;
}

NablaQ nabla_q(const ChristoffelAtPoint& ch) {
    NablaQ out{};
    for (int i = 0; i < 4; ++i)
        for (int s = 0; s < 4; ++s)
            for (int j = 0; j < 4; ++j) {
                double v = 0.0;
                for (int k = 0; k < 4; ++k)
                    v += ch.gamma[s][i][k] * q_entry(k, j) - ch.gamma[k][i][j] * q_entry(s, k);
                out[i][s][j] = v;
            }
    return out;
}

Tensor3 nabla_g(const MetricAtPoint& m, const ChristoffelAtPoint& ch) {
    Tensor3 out{};
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = m.dg(k, i, j);
                for (int a = 0; a < 4; ++a) v -= ch.gamma[a][k][i] * m.g(a, j) + ch.gamma[a][k][j] * m.g(i, a);
                out[k][i][j] = v;
            }
    return out;
}

GeometryAtPoint geometry_at(const ManifoldSpec& spec, const Point& p) {
    MetricAtPoint m = metric_at(spec, p);
    InverseMetricAtPoint inv = inverse_metric(m);
    ChristoffelAtPoint ch = christoffel(m);
    RiemannAtPoint r = riemann(m, ch);
    return GeometryAtPoint{p, m, inv, ch, r};
}

}  // namespace circq
