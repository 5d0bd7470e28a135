#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "circq/circulant.hpp"
#include "circq/tensor.hpp"

namespace circq::verify {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Skipped };

const char* status_name(Status s) noexcept;

/// Default pass thresholds on scaled residuals.
inline constexpr double kAlgebraicTolerance = 1e-14;
inline constexpr double kGradientTolerance = 1e-10;
inline constexpr double kCurvatureTolerance = 1e-9;

/// Outcome of one check. Unless skipped, status is Pass iff every entry
/// of `residuals` (all scaled) is <= tolerance.
struct CheckReport {
    std::string name;
    std::optional<Point> point;
    std::vector<std::pair<std::string, double>> residuals;
    double tolerance = 0.0;
    Status status = Status::Pass;
    Json payload = Json::object();

    double residual(const std::string& label) const;
    double max_residual() const noexcept;

    /// Sets status from residuals and tolerance.
    void settle();
    void skip(const std::string& reason);

    bool passed() const noexcept { return status == Status::Pass; }
};

Json to_json(const CheckReport& r);

/// (alpha, beta, gamma, delta): u = alpha x + beta qx + gamma q^2x + delta q^3x.
struct QBasisCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    double norm2() const noexcept { return alpha * alpha + beta * beta + gamma * gamma + delta * delta; }

    /// u expressed in coordinates given the inducing vector x.
    Vector4 combine(const Vector4& x) const noexcept;
};

/// cos(phi) = ab + ad + bg + dg and cos(theta) = 2ag + 2bd for a unit
/// coefficient vector in an orthonormal q-basis. Throws InvalidArgument if
/// |norm^2 - 1| > 1e-12.
BasisAngles coeff_angles(const QBasisCoefficients& c);

/// ((a^2+g^2-2bd)^2 + (b^2+d^2-2ga)^2 + 2(a^2+g^2-2bd)(b^2+d^2-2ga)),
/// the factor relating R(u,qu,u,qu) to R(x,qx,x,qx).
double mu_expansion_factor(const QBasisCoefficients& c) noexcept;

// --- individual checks ------------------------------------------------------

CheckReport check_isometry(const Matrix4& g, int samples, std::uint64_t seed,
                           double tolerance = kAlgebraicTolerance);
CheckReport check_isometry(const MetricAtPoint& m, int samples, std::uint64_t seed,
                           double tolerance = kAlgebraicTolerance);

CheckReport check_admissibility(const ManifoldSpec& spec, const Point& p);

/// Finds an orthonormal q-basis and records the six angles, the
/// equalities between them and 4 cos(phi) - cos(theta) < 3.
CheckReport check_orthogonal_q_basis(const MetricAtPoint& m, std::uint64_t seed,
                                     double tolerance = kOrthogonalityTolerance);

/// Metric compatibility nabla g = 0 and symmetry of Gamma.
CheckReport check_connection(const GeometryAtPoint& geo, double tolerance = kGradientTolerance);

/// Skew symmetries, pair symmetry and the first Bianchi identity.
CheckReport check_riemann_symmetries(const RiemannAtPoint& r, double tolerance = kCurvatureTolerance);

/// grad A = (grad C) q^2, 2 grad B = (grad C)(q + q^3), as the eight
/// component equations A1=C3, A2=C4, A3=C1, A4=C2, B1=B3, B2=B4,
/// 2B1=C2+C4, 2B2=C1+C3.
CheckReport check_parallel_condition(const ManifoldSpec& spec, const Point& p,
                                     double tolerance = kGradientTolerance);

/// Scaled sup-norm of nabla q at a point.
double nabla_q_residual(const ChristoffelAtPoint& ch) noexcept;

/// At each point, the gradient condition and nabla q = 0 must agree.
CheckReport check_parallel_equivalence(const ManifoldSpec& spec, const std::vector<Point>& points,
                                       double tolerance = kGradientTolerance);

/// R(x, y, qz, qu) = R(x, y, z, u) on the coordinate basis.
CheckReport check_curvature_q_identity(const RiemannAtPoint& r, double tolerance = kCurvatureTolerance);

/// R^a_jkl q^s_a = R^s_akl q^a_j, where R(d_k, d_l) d_j = R^a_jkl d_a. The
/// payload also carries the residual of the alternative reading
/// R^a_jkl = r_mixed[a][j][k][l].
CheckReport check_integrability(const RiemannAtPoint& r, double tolerance = kCurvatureTolerance);

/// mu(x,qx) = mu(qx,q^2x) = mu(q^2x,q^3x) = mu(q^3x,x) and
/// mu(x,q^2x) = mu(qx,q^3x) = 0. Skipped when the curvature identity fails.
CheckReport check_sectional_relations(const GeometryAtPoint& geo, const Vector4& x,
                                      double tolerance = kCurvatureTolerance);
CheckReport check_sectional_relations(const ManifoldSpec& spec, const Point& p, const Vector4& x,
                                      double tolerance = kCurvatureTolerance);

/// Compares R(u,qu,u,qu) by direct contraction against the expansion
/// factor times R(x,qx,x,qx) (pass criterion) and logs the prediction of
/// mu(phi) = mu(pi/2) / (1 - cos^2 phi). x must be an orthonormal q-basis.
CheckReport check_mu_law(const GeometryAtPoint& geo, const Vector4& x, const QBasisCoefficients& c,
                         double tolerance = kCurvatureTolerance);
/// Same, solving for x with a generator seeded from `seed`.
CheckReport check_mu_law(const ManifoldSpec& spec, const Point& p, const QBasisCoefficients& c,
                         std::uint64_t seed, double tolerance = kCurvatureTolerance);

// --- sampled variants --------------------------------------------------------

/// Runs check_sectional_relations on `samples` random vectors inducing a
/// q-basis and keeps the worst residuals.
CheckReport check_sectional_relations_sampled(const GeometryAtPoint& geo, int samples, std::uint64_t seed,
                                              double tolerance = kCurvatureTolerance);

/// Runs check_mu_law on `samples` random unit coefficient vectors.
CheckReport check_mu_law_sampled(const GeometryAtPoint& geo, int samples, std::uint64_t seed,
                                 double tolerance = kCurvatureTolerance);

// --- suite ------------------------------------------------------------------

/// Every check the suite knows, in report order.
const std::vector<std::string>& known_checks();

struct SuiteOptions {
    std::vector<std::string> checks;  // empty: all
    std::uint64_t seed = 0;
    int samples = 50;
    std::map<std::string, double> tolerance_overrides;
};

struct SuiteReport {
    std::string spec_name;
    std::vector<CheckReport> checks;

    bool all_passed() const noexcept;
};

/// Runs the selected checks at each point (in order), then the checks that
/// span all points. Identical inputs give identical reports.
SuiteReport run_suite(const ManifoldSpec& spec, const std::vector<Point>& points, const SuiteOptions& opts);

Json to_json(const SuiteReport& r);

}  // namespace circq::verify
