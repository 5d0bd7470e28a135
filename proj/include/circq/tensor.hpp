#pragma once

#include <array>

#include "circq/circulant.hpp"

namespace circq {

using Tensor3 = std::array<std::array<std::array<double, 4>, 4>, 4>;
using Tensor4 = std::array<Tensor3, 4>;

double max_abs(const Tensor3& t) noexcept;
double max_abs(const Tensor4& t) noexcept;

/// Levi-Civita connection coefficients at a point.
struct ChristoffelAtPoint {
    Tensor3 gamma{};   // gamma[s][i][j]     = Gamma^s_ij, symmetric in (i, j)
    Tensor4 dgamma{};  // dgamma[l][s][i][j] = d_l Gamma^s_ij
};

/// 2 Gamma^s_ij = g^as (d_i g_aj + d_j g_ai - d_a g_ij), with the inverse
/// from the circulant closed form. d Gamma is exact from the jets, using
/// d g^as = -g^ab (d g_bc) g^cs.
ChristoffelAtPoint christoffel(const MetricAtPoint& m);
ChristoffelAtPoint christoffel_at(const ManifoldSpec& spec, const Point& p);

/// Riemann tensor with the convention R(x,y)z = [nabla_x, nabla_y] z -
/// nabla_[x,y] z and R(x,y,z,u) = g(R(x,y)z, u).
struct RiemannAtPoint {
    Tensor4 r_mixed{};  // r_mixed[l][i][j][k] = R^l_ijk, R(d_i, d_j) d_k = R^l_ijk d_l
    Tensor4 r_low{};    // r_low[i][j][k][l]   = R_ijkl = g_al R^a_ijk

    /// Largest infinity-norm of the d Gamma and Gamma Gamma terms that
    /// enter any R_ijkl. Cancellation residuals are measured against it.
    double term_scale = 0.0;
    /// Same for the components of r_mixed.
    double mixed_term_scale = 0.0;

    double max_abs() const noexcept { return circq::max_abs(r_low); }
};

inline constexpr const char* kCurvatureConvention =
    "R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z; "
    "R(x,y,z,u) = g(R(x,y)z,u); R_ijkl = g_al R^a_ijk (last slot lowered); "
    "mu(x,y) = R(x,y,x,y)/(g(x,x)g(y,y)-g(x,y)^2)";

RiemannAtPoint riemann(const MetricAtPoint& m, const ChristoffelAtPoint& ch);
RiemannAtPoint riemann_at(const ManifoldSpec& spec, const Point& p);

/// R(x, y, z, u) = R_ijkl x^i y^j z^k u^l.
double riemann_contract(const RiemannAtPoint& r, const Vector4& x, const Vector4& y, const Vector4& z,
                        const Vector4& u) noexcept;

/// Upper bound of the magnitude of the terms summed by riemann_contract.
double riemann_contract_scale(const RiemannAtPoint& r, const Vector4& x, const Vector4& y, const Vector4& z,
                              const Vector4& u) noexcept;

/// mu(x,y) = R(x,y,x,y) / (g(x,x) g(y,y) - g(x,y)^2). Throws
/// InvalidArgument if the denominator is <= 1e-12 |x|^2 |y|^2.
double sectional_curvature(const RiemannAtPoint& r, const MetricAtPoint& m, const Vector4& x, const Vector4& y);

/// Gamma^s_ij from the full formula evaluated independently for every
/// (i, j), without exploiting the symmetry. Used to cross-check torsion.
Tensor3 christoffel_unsymmetrized(const MetricAtPoint& m);

/// nabla_i q^s_j = Gamma^s_ik q^k_j - Gamma^k_ij q^s_k, stored [i][s][j].
/// q has constant components, so no partial-derivative term appears.
using NablaQ = Tensor3;
NablaQ nabla_q(const ChristoffelAtPoint& ch);

/// nabla_k g_ij = d_k g_ij - Gamma^a_ki g_aj - Gamma^a_kj g_ia, stored [k][i][j].
Tensor3 nabla_g(const MetricAtPoint& m, const ChristoffelAtPoint& ch);

/// Everything computed at one point, in dependency order.
struct GeometryAtPoint {
    Point point;
    MetricAtPoint metric;
    InverseMetricAtPoint inverse;
    ChristoffelAtPoint christoffel;
    RiemannAtPoint riemann;
};

GeometryAtPoint geometry_at(const ManifoldSpec& spec, const Point& p);

}  // namespace circq
