#include "circq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "circq/error.hpp"
#include "circq/random.hpp"

namespace circq::verify {

const char* status_name(Status s) noexcept {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

double CheckReport::residual(const std::string& label) const {
    for (const auto& [k, v] : residuals)
        if (k == label) return v;
    throw InvalidArgument("no residual named '" + label + "' in check '" + name + "'");
}

double CheckReport::max_residual() const noexcept {
    double m = 0.0;
    for (const auto& kv : residuals) m = std::max(m, kv.second);
    return m;
}

void CheckReport::settle() {
    status = Status::Pass;
    for (const auto& kv : residuals)
        if (!(kv.second <= tolerance)) status = Status::Fail;
}

void CheckReport::skip(const std::string& reason) {
    status = Status::Skipped;
    payload["reason"] = reason;
}

namespace {

Json point_json(const Point& p) { return Json(p.x); }
Json vector_json(const Vector4& v) { return Json(v.c); }

double scaled(double abs_value, double scale) noexcept { return scale > 0.0 ? abs_value / scale : abs_value; }

// splitmix64 finaliser, used to derive independent sub-seeds.
std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix(mix(mix(seed) ^ a) ^ b);
}

Vector4 random_q_basis_vector(std::mt19937_64& rng) {
    for (;;) {
        Vector4 x = uniform_vector(rng);
        if (induces_q_basis(x).induces) return x;
    }
}

}  // namespace

Json to_json(const CheckReport& r) {
    Json j;
    j["name"] = r.name;
    j["point"] = r.point ? point_json(*r.point) : Json(nullptr);
    Json res = Json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    j["residuals"] = res;
    j["tolerance"] = r.tolerance;
    j["status"] = status_name(r.status);
    j["payload"] = r.payload;
    return j;
}

Vector4 QBasisCoefficients::combine(const Vector4& x) const noexcept {
    return alpha * x + beta * q_apply(x, 1) + gamma * q_apply(x, 2) + delta * q_apply(x, 3);
}

BasisAngles coeff_angles(const QBasisCoefficients& c) {
    if (std::abs(c.norm2() - 1.0) > 1e-12) throw InvalidArgument("coefficient vector is not of unit norm");
    const double a = c.alpha, b = c.beta, g = c.gamma, d = c.delta;
    return {a * b + a * d + b * g + d * g, 2.0 * a * g + 2.0 * b * d};
}

double mu_expansion_factor(const QBasisCoefficients& c) noexcept {
    const double a = c.alpha, b = c.beta, g = c.gamma, d = c.delta;
    const double s = a * a + g * g - 2.0 * b * d;
    const double t = b * b + d * d - 2.0 * g * a;
    return s * s + t * t + 2.0 * s * t;
}

// ---------------------------------------------------------------------------

CheckReport check_isometry(const Matrix4& g, int samples, std::uint64_t seed, double tolerance) {
    CheckReport r;
    r.name = "isometry";
    r.tolerance = tolerance;
    std::mt19937_64 rng(seed);
    double worst_abs = 0.0;
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const Vector4 x = uniform_vector(rng);
        const Vector4 y = uniform_vector(rng);
        const double base = inner(g, x, y);
        double scale = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) scale += std::abs(g[i][j] * x[i] * y[j]);
        for (int k = 1; k <= 3; ++k) {
            const double diff = std::abs(inner(g, q_apply(x, k), q_apply(y, k)) - base);
            worst_abs = std::max(worst_abs, diff);
            worst = std::max(worst, scaled(diff, scale));
        }
    }
    r.residuals = {{"isometry", worst}};
    r.payload["samples"] = samples;
    r.payload["max_abs_difference"] = worst_abs;
    r.settle();
    return r;
}

CheckReport check_isometry(const MetricAtPoint& m, int samples, std::uint64_t seed, double tolerance) {
    return check_isometry(m.matrix(), samples, seed, tolerance);
}

CheckReport check_admissibility(const ManifoldSpec& spec, const Point& p) {
    CheckReport r;
    r.name = "admissibility";
    r.point = p;
    r.tolerance = 0.0;
    if (!spec.domain.contains(p)) throw DomainError("point outside the domain box of '" + spec.name + "'");
    const double a = spec.A.eval(p), b = spec.B.eval(p), c = spec.C.eval(p);
    const Admissibility adm = admissibility(a, b, c);
    r.residuals = {{"ordering_violated", adm.ordered ? 0.0 : 1.0}};
    r.payload["A"] = a;
    r.payload["B"] = b;
    r.payload["C"] = c;
    r.payload["minors"] = adm.minors;
    r.settle();
    return r;
}

CheckReport check_orthogonal_q_basis(const MetricAtPoint& m, std::uint64_t seed, double tolerance) {
    CheckReport r;
    r.name = "orthogonal-q-basis";
    r.tolerance = tolerance;
    std::mt19937_64 rng(seed);
    Vector4 x;
    try {
        x = find_orthogonal_q_basis(m, rng);
    } catch (const SolverError& e) {
        r.residuals = {{"orthogonality", e.best_residual()}};
        r.payload["error"] = e.what();
        r.settle();
        return r;
    }
    std::array<Vector4, 4> basis{x, q_apply(x, 1), q_apply(x, 2), q_apply(x, 3)};
    double ortho = 0.0;
    double unit = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        unit = std::max(unit, std::abs(inner(m, basis[i], basis[i]) - 1.0));
        for (std::size_t j = i + 1; j < 4; ++j) ortho = std::max(ortho, std::abs(inner(m, basis[i], basis[j])));
    }
    const auto cosines = q_basis_cosines(m, x);
    double spread_phi = 0.0;
    for (int k = 1; k < 4; ++k) spread_phi = std::max(spread_phi, std::abs(cosines[k] - cosines[0]));
    const double spread_theta = std::abs(cosines[5] - cosines[4]);
    const double ineq = 4.0 * cosines[0] - cosines[4];

    r.residuals = {{"orthogonality", ortho},
                   {"unit_norm", unit},
                   {"angle_equality", std::max(spread_phi, spread_theta)},
                   {"inequality_violated", ineq < 3.0 ? 0.0 : 1.0}};
    r.payload["x"] = vector_json(x);
    r.payload["cosines"] = cosines;
    r.payload["cos_phi"] = cosines[0];
    r.payload["cos_theta"] = cosines[4];
    r.payload["four_cos_phi_minus_cos_theta"] = ineq;
    r.payload["q_basis_value"] = induces_q_basis(x).value;
    r.settle();
    return r;
}

CheckReport check_connection(const GeometryAtPoint& geo, double tolerance) {
    CheckReport r;
    r.name = "connection";
    r.point = geo.point;
    r.tolerance = tolerance;

    double dg_max = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) dg_max = std::max(dg_max, std::abs(geo.metric.dg(k, i, j)));
    const double compat = max_abs(nabla_g(geo.metric, geo.christoffel));

    const Tensor3 raw = christoffel_unsymmetrized(geo.metric);
    double torsion = 0.0;
    for (int s = 0; s < 4; ++s)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                torsion = std::max(torsion, std::abs(raw[s][i][j] - raw[s][j][i]));
                torsion = std::max(torsion, std::abs(raw[s][i][j] - geo.christoffel.gamma[s][i][j]));
            }
    const double gamma_max = max_abs(geo.christoffel.gamma);

    r.residuals = {{"metric_compatibility", compat / std::max(1.0, dg_max)},
                   {"torsion", torsion / std::max(1.0, gamma_max)}};
    r.payload["metric_compatibility_abs"] = compat;
    r.payload["torsion_abs"] = torsion;
    r.payload["max_abs_dg"] = dg_max;
    r.payload["max_abs_gamma"] = gamma_max;
    r.settle();
    return r;
}

CheckReport check_riemann_symmetries(const RiemannAtPoint& rm, double tolerance) {
    CheckReport r;
    r.name = "riemann-symmetry";
    r.tolerance = tolerance;
    const auto& R = rm.r_low;
    double skew_ij = 0.0, skew_kl = 0.0, pair = 0.0, bianchi = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    skew_ij = std::max(skew_ij, std::abs(R[i][j][k][l] + R[j][i][k][l]));
                    skew_kl = std::max(skew_kl, std::abs(R[i][j][k][l] + R[i][j][l][k]));
                    pair = std::max(pair, std::abs(R[i][j][k][l] - R[k][l][i][j]));
                    bianchi = std::max(bianchi, std::abs(R[i][j][k][l] + R[j][k][i][l] + R[k][i][j][l]));
                }
    const double scale = std::max(rm.max_abs(), rm.term_scale);
    r.residuals = {{"skew_ij", scaled(skew_ij, scale)},
                   {"skew_kl", scaled(skew_kl, scale)},
                   {"pair", scaled(pair, scale)},
                   {"bianchi", scaled(bianchi, scale)}};
    r.payload["max_abs_R"] = rm.max_abs();
    r.payload["term_scale"] = rm.term_scale;
    r.settle();
    return r;
}

CheckReport check_parallel_condition(const ManifoldSpec& spec, const Point& p, double tolerance) {
    CheckReport r;
    r.name = "parallel";
    r.point = p;
    r.tolerance = tolerance;
    const MetricAtPoint m = metric_at(spec, p);
    const auto& A = m.jet(Slot::A).grad;
    const auto& B = m.jet(Slot::B).grad;
    const auto& C = m.jet(Slot::C).grad;

    const std::pair<const char*, double> eqs[] = {
        {"A1-C3", A[0] - C[2]},           {"A2-C4", A[1] - C[3]},
        {"A3-C1", A[2] - C[0]},           {"A4-C2", A[3] - C[1]},
        {"B1-B3", B[0] - B[2]},           {"B2-B4", B[1] - B[3]},
        {"2B1-C2-C4", 2 * B[0] - C[1] - C[3]}, {"2B2-C1-C3", 2 * B[1] - C[0] - C[2]},
    };
    double grad_max = 0.0;
    for (std::size_t i = 0; i < 4; ++i) grad_max = std::max({grad_max, std::abs(A[i]), std::abs(B[i]), std::abs(C[i])});
    const double scale = std::max(1.0, grad_max);

    Json abs_values = Json::object();
    for (const auto& [label, v] : eqs) {
        r.residuals.emplace_back(label, std::abs(v) / scale);
        abs_values[label] = std::abs(v);
    }
    r.payload["absolute"] = abs_values;
    r.payload["grad_A"] = A;
    r.payload["grad_B"] = B;
    r.payload["grad_C"] = C;
    r.payload["scale"] = scale;
    r.settle();
    return r;
}

double nabla_q_residual(const ChristoffelAtPoint& ch) noexcept {
    return max_abs(nabla_q(ch)) / std::max(1.0, max_abs(ch.gamma));
}

CheckReport check_parallel_equivalence(const ManifoldSpec& spec, const std::vector<Point>& points,
                                       double tolerance) {
    CheckReport r;
    r.name = "parallel-equivalence";
    r.tolerance = 0.0;
    int disagreements = 0;
    int parallel_count = 0;
    double worst_gradient_parallel = 0.0;
    double worst_nq_parallel = 0.0;
    Json rows = Json::array();
    for (const Point& p : points) {
        const CheckReport gradient = check_parallel_condition(spec, p, tolerance);
        const double nq = nabla_q_residual(christoffel_at(spec, p));
        const bool gradient_holds = gradient.passed();
        const bool parallel_holds = nq <= tolerance;
        if (gradient_holds != parallel_holds) ++disagreements;
        if (gradient_holds && parallel_holds) {
            ++parallel_count;
            worst_gradient_parallel = std::max(worst_gradient_parallel, gradient.max_residual());
            worst_nq_parallel = std::max(worst_nq_parallel, nq);
        }
        Json row;
        row["point"] = point_json(p);
        row["gradient_condition_residual"] = gradient.max_residual();
        row["nabla_q_residual"] = nq;
        row["gradient_condition_holds"] = gradient_holds;
        row["q_parallel"] = parallel_holds;
        rows.push_back(std::move(row));
    }
    r.residuals = {{"disagreements", static_cast<double>(disagreements)}};
    r.payload["predicate_tolerance"] = tolerance;
    r.payload["points"] = static_cast<int>(points.size());
    r.payload["both_hold"] = parallel_count;
    r.payload["max_gradient_residual_where_parallel"] = worst_gradient_parallel;
    r.payload["max_nabla_q_residual_where_parallel"] = worst_nq_parallel;
    r.payload["per_point"] = std::move(rows);
    r.settle();
    return r;
}

CheckReport check_curvature_q_identity(const RiemannAtPoint& rm, double tolerance) {
    CheckReport r;
    r.name = "curvature-identity";
    r.tolerance = tolerance;
    const auto& R = rm.r_low;
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    // (q e_k)^a = q^a_k
                    double shifted = 0.0;
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b) shifted += q_entry(a, k) * q_entry(b, l) * R[i][j][a][b];
                    worst = std::max(worst, std::abs(shifted - R[i][j][k][l]));
                }
    const double scale = std::max(rm.max_abs(), rm.term_scale);
    r.residuals = {{"R(x,y,qz,qu)-R(x,y,z,u)", scaled(worst, scale)}};
    r.payload["max_abs_difference"] = worst;
    r.payload["max_abs_R"] = rm.max_abs();
    r.payload["scale"] = scale;
    r.settle();
    return r;
}

namespace {

// max over (s, j, k, l) of |P^a_jkl q^s_a - P^s_akl q^a_j| where P is
// r_mixed read through `at(a, j, k, l)`.
template <typename At>
double integrability_residual(At at) {
    double worst = 0.0;
    for (int s = 0; s < 4; ++s)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double lhs = 0.0, rhs = 0.0;
                    for (int a = 0; a < 4; ++a) {
                        lhs += at(a, j, k, l) * q_entry(s, a);
                        rhs += at(s, a, k, l) * q_entry(a, j);
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
    return worst;
}

}  // namespace

CheckReport check_integrability(const RiemannAtPoint& rm, double tolerance) {
    CheckReport r;
    r.name = "integrability";
    r.tolerance = tolerance;
    const auto& M = rm.r_mixed;
    const double primary = integrability_residual([&](int a, int j, int k, int l) { return M[a][k][l][j]; });
    const double alternate = integrability_residual([&](int a, int j, int k, int l) { return M[a][j][k][l]; });
    const double scale = std::max(max_abs(M), rm.mixed_term_scale);
    r.residuals = {{"commutation", scaled(primary, scale)}};
    r.payload["index_reading"] = "R(d_k,d_l)d_j = R^a_jkl d_a";
    r.payload["max_abs_difference"] = primary;
    r.payload["alternate_index_reading"] = "R^a_jkl = r_mixed[a][j][k][l]";
    r.payload["alternate_scaled_residual"] = scaled(alternate, scale);
    r.settle();
    return r;
}

CheckReport check_sectional_relations(const GeometryAtPoint& geo, const Vector4& x, double tolerance) {
    CheckReport r;
    r.name = "sectional";
    r.point = geo.point;
    r.tolerance = tolerance;
    r.payload["x"] = vector_json(x);
    if (!check_curvature_q_identity(geo.riemann).passed()) {
        r.skip("precondition not satisfied: R(x,y,qz,qu) = R(x,y,z,u) fails");
        return r;
    }
    if (!induces_q_basis(x).induces) throw InvalidArgument("vector does not induce a q-basis");

    const std::array<Vector4, 4> b{x, q_apply(x, 1), q_apply(x, 2), q_apply(x, 3)};
    auto mu = [&](std::size_t i, std::size_t j) { return sectional_curvature(geo.riemann, geo.metric, b[i], b[j]); };
    auto mu_scale = [&](std::size_t i, std::size_t j) {
        const double xx = inner(geo.metric, b[i], b[i]);
        const double yy = inner(geo.metric, b[j], b[j]);
        const double xy = inner(geo.metric, b[i], b[j]);
        return riemann_contract_scale(geo.riemann, b[i], b[j], b[i], b[j]) / (xx * yy - xy * xy);
    };

    const std::array<double, 4> adjacent{mu(0, 1), mu(1, 2), mu(2, 3), mu(3, 0)};
    const std::array<double, 2> opposite{mu(0, 2), mu(1, 3)};
    double scale = 0.0;
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}})
        scale = std::max(scale, mu_scale(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    const auto [lo, hi] = std::minmax_element(adjacent.begin(), adjacent.end());
    double magnitude = scale;
    for (double v : adjacent) magnitude = std::max(magnitude, std::abs(v));

    r.residuals = {{"adjacent_spread", scaled(*hi - *lo, magnitude)},
                   {"mu(x,q2x)", scaled(std::abs(opposite[0]), scale)},
                   {"mu(qx,q3x)", scaled(std::abs(opposite[1]), scale)}};
    r.payload["mu_adjacent"] = adjacent;
    r.payload["mu_opposite"] = opposite;
    r.payload["scale"] = scale;
    r.settle();
    return r;
}

CheckReport check_sectional_relations(const ManifoldSpec& spec, const Point& p, const Vector4& x, double tolerance) {
    return check_sectional_relations(geometry_at(spec, p), x, tolerance);
}

CheckReport check_mu_law(const GeometryAtPoint& geo, const Vector4& x, const QBasisCoefficients& c,
                         double tolerance) {
    CheckReport r;
    r.name = "mu-law";
    r.point = geo.point;
    r.tolerance = tolerance;
    r.payload["coefficients"] = {c.alpha, c.beta, c.gamma, c.delta};
    if (!check_curvature_q_identity(geo.riemann).passed()) {
        r.skip("precondition not satisfied: R(x,y,qz,qu) = R(x,y,z,u) fails");
        return r;
    }
    const BasisAngles ang = coeff_angles(c);
    const Vector4 u = c.combine(x);
    if (!induces_q_basis(u).induces) {
        r.skip("u does not induce a q-basis");
        return r;
    }
    const Vector4 qu = q_apply(u, 1);
    const Vector4 qx = q_apply(x, 1);
    const MetricAtPoint& m = geo.metric;

    const double direct = riemann_contract(geo.riemann, u, qu, u, qu);
    const double base = riemann_contract(geo.riemann, x, qx, x, qx);
    const double factor = mu_expansion_factor(c);
    const double expansion = factor * base;

    const double mu_right = sectional_curvature(geo.riemann, m, x, qx);
    const double uu = inner(m, u, u), quqa = inner(m, qu, qu), uqu = inner(m, u, qu);
    const double denom = uu * quqa - uqu * uqu;
    const double law = mu_right * denom / (1.0 - ang.cos_phi * ang.cos_phi);

    const double scale = std::max(riemann_contract_scale(geo.riemann, u, qu, u, qu),
                                  factor * riemann_contract_scale(geo.riemann, x, qx, x, qx));
    r.residuals = {{"direct-expansion", scaled(std::abs(direct - expansion), scale)}};
    r.payload["x"] = vector_json(x);
    r.payload["cos_phi"] = ang.cos_phi;
    r.payload["cos_theta"] = ang.cos_theta;
    r.payload["cos_phi_direct"] = cos_angle(m, u, qu);
    r.payload["cos_theta_direct"] = cos_angle(m, u, q_apply(u, 2));
    r.payload["R(x,qx,x,qx)"] = base;
    r.payload["direct"] = direct;
    r.payload["expansion_factor"] = factor;
    r.payload["one_minus_cos_theta_squared"] = (1.0 - ang.cos_theta) * (1.0 - ang.cos_theta);
    r.payload["expansion_prediction"] = expansion;
    r.payload["mu_law_prediction"] = law;
    r.payload["direct_over_mu_law"] = law != 0.0 ? Json(direct / law) : Json(nullptr);
    r.payload["mu_law_scaled_difference"] = scaled(std::abs(direct - law), scale);
    r.payload["scale"] = scale;
    r.settle();
    return r;
}

CheckReport check_mu_law(const ManifoldSpec& spec, const Point& p, const QBasisCoefficients& c, std::uint64_t seed,
                         double tolerance) {
    const GeometryAtPoint geo = geometry_at(spec, p);
    std::mt19937_64 rng(seed);
    return check_mu_law(geo, find_orthogonal_q_basis(geo.metric, rng), c, tolerance);
}

CheckReport check_sectional_relations_sampled(const GeometryAtPoint& geo, int samples, std::uint64_t seed,
                                              double tolerance) {
    CheckReport r;
    r.name = "sectional";
    r.point = geo.point;
    r.tolerance = tolerance;
    if (!check_curvature_q_identity(geo.riemann).passed()) {
        r.skip("precondition not satisfied: R(x,y,qz,qu) = R(x,y,z,u) fails");
        return r;
    }
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::string, double>> worst;
    Json rows = Json::array();
    for (int n = 0; n < samples; ++n) {
        const Vector4 x = random_q_basis_vector(rng);
        const CheckReport one = check_sectional_relations(geo, x, tolerance);
        if (worst.empty()) worst = one.residuals;
        for (std::size_t i = 0; i < worst.size(); ++i)
            worst[i].second = std::max(worst[i].second, one.residuals[i].second);
        rows.push_back(one.payload);
    }
    r.residuals = std::move(worst);
    r.payload["samples"] = samples;
    r.payload["per_sample"] = std::move(rows);
    r.settle();
    return r;
}

CheckReport check_mu_law_sampled(const GeometryAtPoint& geo, int samples, std::uint64_t seed, double tolerance) {
    CheckReport r;
    r.name = "mu-law";
    r.point = geo.point;
    r.tolerance = tolerance;
    if (!check_curvature_q_identity(geo.riemann).passed()) {
        r.skip("precondition not satisfied: R(x,y,qz,qu) = R(x,y,z,u) fails");
        return r;
    }
    std::mt19937_64 rng(seed);
    Vector4 x;
    try {
        x = find_orthogonal_q_basis(geo.metric, rng);
    } catch (const SolverError& e) {
        r.residuals = {{"direct-expansion", std::numeric_limits<double>::infinity()}};
        r.payload["error"] = e.what();
        r.settle();
        return r;
    }
    double worst = 0.0;
    double worst_law = 0.0;
    int evaluated = 0;
    Json rows = Json::array();
    while (evaluated < samples) {
        const Vector4 v = uniform_vector(rng);
        const double n = v.euclidean_norm();
        if (n < 1e-3) continue;
        const QBasisCoefficients c{v[0] / n, v[1] / n, v[2] / n, v[3] / n};
        const CheckReport one = check_mu_law(geo, x, c, tolerance);
        if (one.status == Status::Skipped) continue;
        ++evaluated;
        worst = std::max(worst, one.residuals.front().second);
        worst_law = std::max(worst_law, one.payload["mu_law_scaled_difference"].get<double>());
        rows.push_back(one.payload);
    }
    r.residuals = {{"direct-expansion", worst}};
    r.payload["x"] = vector_json(x);
    r.payload["samples"] = samples;
    r.payload["max_mu_law_scaled_difference"] = worst_law;
    r.payload["per_sample"] = std::move(rows);
    r.settle();
    return r;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{
        "admissibility", "isometry",           "orthogonal-q-basis", "connection",
        "riemann-symmetry", "parallel",        "curvature-identity", "integrability",
        "sectional",     "mu-law",             "parallel-equivalence",
    };
    return names;
}

bool SuiteReport::all_passed() const noexcept {
    return std::none_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.status == Status::Fail; });
}

SuiteReport run_suite(const ManifoldSpec& spec, const std::vector<Point>& points, const SuiteOptions& opts) {
    const auto& all = known_checks();
    std::vector<std::string> selected = opts.checks.empty() ? all : opts.checks;
    for (const auto& name : selected)
        if (std::find(all.begin(), all.end(), name) == all.end())
            throw InvalidArgument("unknown check '" + name + "'");
    auto enabled = [&](const std::string& n) {
        return std::find(selected.begin(), selected.end(), n) != selected.end();
    };
    auto tol = [&](const std::string& n, double dflt) {
        auto it = opts.tolerance_overrides.find(n);
        return it == opts.tolerance_overrides.end() ? dflt : it->second;
    };

    SuiteReport report;
    report.spec_name = spec.name;
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const Point& p = points[pi];
        auto seed_for = [&](std::size_t check) { return derive_seed(opts.seed, pi, check); };
        if (enabled("admissibility")) report.checks.push_back(check_admissibility(spec, p));
        const GeometryAtPoint geo = geometry_at(spec, p);
        auto at_point = [&](CheckReport c) {
            c.point = p;
            report.checks.push_back(std::move(c));
        };
        if (enabled("isometry"))
            at_point(check_isometry(geo.metric, opts.samples, seed_for(1), tol("isometry", kAlgebraicTolerance)));
        if (enabled("orthogonal-q-basis"))
            at_point(check_orthogonal_q_basis(geo.metric, seed_for(2), tol("orthogonal-q-basis", kOrthogonalityTolerance)));
        if (enabled("connection")) at_point(check_connection(geo, tol("connection", kGradientTolerance)));
        if (enabled("riemann-symmetry"))
            at_point(check_riemann_symmetries(geo.riemann, tol("riemann-symmetry", kCurvatureTolerance)));
        if (enabled("parallel")) at_point(check_parallel_condition(spec, p, tol("parallel", kGradientTolerance)));
        if (enabled("curvature-identity"))
            at_point(check_curvature_q_identity(geo.riemann, tol("curvature-identity", kCurvatureTolerance)));
        if (enabled("integrability"))
            at_point(check_integrability(geo.riemann, tol("integrability", kCurvatureTolerance)));
        if (enabled("sectional"))
            at_point(check_sectional_relations_sampled(geo, opts.samples, seed_for(3), tol("sectional", kCurvatureTolerance)));
        if (enabled("mu-law"))
            at_point(check_mu_law_sampled(geo, opts.samples, seed_for(4), tol("mu-law", kCurvatureTolerance)));
    }
    if (enabled("parallel-equivalence"))
        report.checks.push_back(check_parallel_equivalence(spec, points, tol("parallel-equivalence", kGradientTolerance)));
    return report;
}

Json to_json(const SuiteReport& r) {
    Json j;
    j["spec"] = r.spec_name;
    j["convention"] = kCurvatureConvention;
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    j["checks"] = std::move(checks);
    return j;
}

}  // namespace circq::verify
