#include "circq/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "circq/error.hpp"
#include "circq/random.hpp"

namespace circq {

MetricAtPoint::MetricAtPoint(const FieldJet& a, const FieldJet& b, const FieldJet& c)
    : jets_{a, b, c} {}

MetricAtPoint MetricAtPoint::constant(double a, double b, double c) {
    return MetricAtPoint(FieldJet::constant(a), FieldJet::constant(b), FieldJet::constant(c));
}

Matrix4 MetricAtPoint::matrix() const noexcept {
    Matrix4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = g(i, j);
    return out;
}

Admissibility admissibility(double a, double b, double c) noexcept {
    Admissibility r;
    r.ordered = 0.0 < b && b < c && c < a;
    r.minors = {
        a,
        (a - b) * (a + b),
        (a - c) * (a * (c + a) - 2.0 * b * b),
        (a - c) * (a - c) * ((a + c) * (a + c) - 4.0 * b * b),
    };
    return r;
}

MetricAtPoint metric_at(const ManifoldSpec& spec, const Point& p) {
    if (!spec.domain.contains(p)) throw DomainError("point outside the domain box of '" + spec.name + "'");
    MetricAtPoint m(spec.A.eval_jet(p), spec.B.eval_jet(p), spec.C.eval_jet(p));
    if (!admissibility(m.a(), m.b(), m.c()).ordered) {
        throw AdmissibilityError("ordering 0 < B < C < A violated (A=" + std::to_string(m.a()) +
                                 ", B=" + std::to_string(m.b()) + ", C=" + std::to_string(m.c()) + ")");
    }
    return m;
}

Matrix4 InverseMetricAtPoint::matrix() const noexcept {
    Matrix4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = ginv(i, j);
    return out;
}

InverseMetricAtPoint inverse_metric(double a, double b, double c) {
    InverseMetricAtPoint inv;
    inv.abar = a * (a + c) - 2.0 * b * b;
    inv.bbar = b * (c - a);
    inv.cbar = 2.0 * b * b - c * (a + c);
    inv.d = (a - c) * ((a + c) * (a + c) - 4.0 * b * b);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (!(std::abs(inv.d) > 1e-14 * scale * scale * scale) || !std::isfinite(inv.d))
        throw SingularityError("circulant metric is singular (D = " + std::to_string(inv.d) + ")");
    return inv;
}

InverseMetricAtPoint inverse_metric(const MetricAtPoint& m) { return inverse_metric(m.a(), m.b(), m.c()); }

Matrix4 q_matrix(int power) noexcept {
    Matrix4 out{};
    const int k = ((power % 4) + 4) % 4;
    for (int s = 0; s < 4; ++s) out[s][(s + k) % 4] = 1.0;
    return out;
}

Vector4 q_apply(const Vector4& x, int k) noexcept {
    const int shift = ((k % 4) + 4) % 4;
    Vector4 out;
    for (std::size_t s = 0; s < 4; ++s) out[s] = x[(s + static_cast<std::size_t>(shift)) % 4];
    return out;
}

namespace {

// Sum in sorted order: the result depends only on the multiset of terms.
double sorted_sum(std::array<double, 16>& terms) noexcept {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
}

}  // namespace

double inner(const Matrix4& g, const Vector4& x, const Vector4& y) noexcept {
    std::array<double, 16> terms;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) terms[4 * i + j] = g[i][j] * x[i] * y[j];
    return sorted_sum(terms);
}

double inner(const MetricAtPoint& m, const Vector4& x, const Vector4& y) noexcept {
    std::array<double, 16> terms;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            terms[static_cast<std::size_t>(4 * i + j)] =
                m.g(i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    return sorted_sum(terms);
}

double cos_angle(const MetricAtPoint& m, const Vector4& x, const Vector4& y) {
    const double xx = inner(m, x, x);
    const double yy = inner(m, y, y);
    if (!(xx > 0.0) || !(yy > 0.0)) throw InvalidArgument("angle with a zero vector");
    double c = inner(m, x, y) / (std::sqrt(xx) * std::sqrt(yy));
    if (std::abs(c) > 1.0) {
        if (std::abs(c) - 1.0 > 1e-12) throw std::logic_error("cosine outside [-1, 1]: " + std::to_string(c));
        c = std::copysign(1.0, c);
    }
    return c;
}

QBasisTest induces_q_basis(const Vector4& x) noexcept {
    const double d13 = x[0] - x[2];
    const double d24 = x[1] - x[3];
    const double s13 = x[0] + x[2];
    const double s24 = x[1] + x[3];
    QBasisTest r;
    r.value = (d13 * d13 + d24 * d24) * (s13 * s13 - s24 * s24);
    const double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    r.induces = std::abs(r.value) > 1e-12 * n2 * n2;
    return r;
}

std::array<double, 6> q_basis_cosines(const MetricAtPoint& m, const Vector4& x) {
    const Vector4 q1 = q_apply(x, 1);
    const Vector4 q2 = q_apply(x, 2);
    const Vector4 q3 = q_apply(x, 3);
    return {cos_angle(m, x, q1),  cos_angle(m, q1, q2), cos_angle(m, x, q3),
            cos_angle(m, q2, q3), cos_angle(m, x, q2),  cos_angle(m, q1, q3)};
}

BasisAngles basis_angles(const MetricAtPoint& m, const Vector4& x) {
    if (!induces_q_basis(x).induces) throw InvalidArgument("vector does not induce a q-basis");
    const auto c = q_basis_cosines(m, x);
    constexpr double tol = 1e-12;
    for (int k = 1; k < 4; ++k)
        if (std::abs(c[k] - c[0]) > tol) throw std::logic_error("angles to qx disagree across the q-basis");
    if (std::abs(c[5] - c[4]) > tol) throw std::logic_error("angles to q^2x disagree across the q-basis");
    BasisAngles out{c[0], c[4]};
    if (!(4.0 * out.cos_phi - out.cos_theta < 3.0)) throw std::logic_error("4 cos(phi) - cos(theta) >= 3");
    return out;
}

namespace {

struct Residual {
    std::array<double, 3> f{};
    double norm2() const noexcept { return f[0] * f[0] + f[1] * f[1] + f[2] * f[2]; }
};

Residual residual(const MetricAtPoint& m, const Vector4& x) {
    return {{inner(m, x, q_apply(x, 1)), inner(m, x, q_apply(x, 2)), inner(m, x, x) - 1.0}};
}

// Rows of the Jacobian of residual(): d/dx g(x, q^k x) = (G Q^k + (Q^k)^T G) x.
std::array<Vector4, 3> jacobian(const MetricAtPoint& m, const Vector4& x) {
    std::array<Vector4, 3> J{};
    for (int k = 1; k <= 2; ++k) {
        const Vector4 qx = q_apply(x, k);
        const Vector4 qinv_x = q_apply(x, -k);
        for (int i = 0; i < 4; ++i) {
            double s = 0.0;
            for (int j = 0; j < 4; ++j)
                s += m.g(i, j) * (qx[static_cast<std::size_t>(j)] + qinv_x[static_cast<std::size_t>(j)]);
            J[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)] = s;
        }
    }
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += 2.0 * m.g(i, j) * x[static_cast<std::size_t>(j)];
        J[2][static_cast<std::size_t>(i)] = s;
    }
    return J;
}

// Solves the 3x3 system M y = r by Gaussian elimination with partial
// pivoting. Returns false if M is numerically singular.
bool solve3(std::array<std::array<double, 3>, 3> M, std::array<double, 3> r, std::array<double, 3>& y) {
    double scale = 0.0;
    for (const auto& row : M)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(M[row][col]) > std::abs(M[piv][col])) piv = row;
        if (std::abs(M[piv][col]) < 1e-13 * scale) return false;
        std::swap(M[piv], M[col]);
        std::swap(r[piv], r[col]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = M[row][col] / M[col][col];
            for (int k = col; k < 3; ++k) M[row][k] -= f * M[col][k];
            r[row] -= f * r[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double s = r[row];
        for (int k = row + 1; k < 3; ++k) s -= M[row][k] * y[k];
        y[row] = s / M[row][row];
    }
    return true;
}

}  // namespace

Vector4 find_orthogonal_q_basis(const MetricAtPoint& m, std::mt19937_64& rng) {
    double best = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < kSolverRestarts; ++attempt) {
        Vector4 x = uniform_vector(rng);
        const double xx = inner(m, x, x);
        if (!(xx > 0.0)) continue;
        x = (1.0 / std::sqrt(xx)) * x;

        Residual F = residual(m, x);
        for (int it = 0; it < 100 && F.norm2() > 1e-30; ++it) {
            const auto J = jacobian(m, x);
            std::array<std::array<double, 3>, 3> JJt{};
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b)
                    for (std::size_t i = 0; i < 4; ++i) JJt[a][b] += J[a][i] * J[b][i];
            std::array<double, 3> y{};
            if (!solve3(JJt, F.f, y)) break;
            Vector4 step;
            for (std::size_t i = 0; i < 4; ++i) step[i] = -(J[0][i] * y[0] + J[1][i] * y[1] + J[2][i] * y[2]);

            double t = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
                const Vector4 trial = x + t * step;
                const Residual Ft = residual(m, trial);
                if (Ft.norm2() < F.norm2()) {
                    x = trial;
                    F = Ft;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }

        const double norm = inner(m, x, x);
        if (!(norm > 0.0)) continue;
        x = (1.0 / std::sqrt(norm)) * x;
        const double r1 = std::abs(inner(m, x, q_apply(x, 1)));
        const double r2 = std::abs(inner(m, x, q_apply(x, 2)));
        const double worst = std::max(r1, r2);
        best = std::min(best, worst);
        if (worst <= kOrthogonalityTolerance && induces_q_basis(x).induces) return x;
    }
    throw SolverError("orthogonal q-basis solver failed after " + std::to_string(kSolverRestarts) +
                          " restarts (best residual " + std::to_string(best) + ")",
                      best);
}

}  // namespace circq
