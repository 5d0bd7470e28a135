#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "circq/expr.hpp"
#include "circq/jet.hpp"
#include "circq/types.hpp"

namespace circq {

/// Axis-aligned box [min_i, max_i] in R^4.
struct Box {
    std::array<double, 4> min{};
    std::array<double, 4> max{};

    bool contains(const Point& p) const noexcept {
        for (std::size_t i = 0; i < 4; ++i)
            if (!(p[i] >= min[i] && p[i] <= max[i])) return false;
        return true;
    }
};

/// The input datum: the three functions of the circulant metric and the
/// coordinate box on which they are studied.
struct ManifoldSpec {
    std::string name;
    ScalarField A;
    ScalarField B;
    ScalarField C;
    Box domain;
};

/// Which of A, B, C occupies g_ij: A on the diagonal, C two steps off it,
/// B elsewhere.
enum class Slot { A = 0, B = 1, C = 2 };

constexpr Slot slot_of(int i, int j) noexcept {
    const int d = ((j - i) % 4 + 4) % 4;
    return d == 0 ? Slot::A : (d == 2 ? Slot::C : Slot::B);
}

/// The metric of the circulant pattern (A B C B) at one point, together
/// with the jets of A, B, C so first and second partials of every g_ij are
/// available.
class MetricAtPoint {
public:
    MetricAtPoint(const FieldJet& a, const FieldJet& b, const FieldJet& c);

    /// Constant metric with vanishing derivatives.
    static MetricAtPoint constant(double a, double b, double c);

    double a() const noexcept { return jets_[0].value; }
    double b() const noexcept { return jets_[1].value; }
    double c() const noexcept { return jets_[2].value; }

    const FieldJet& jet(Slot s) const noexcept { return jets_[static_cast<std::size_t>(s)]; }

    double g(int i, int j) const noexcept { return jet(slot_of(i, j)).value; }
    /// d_k g_ij
    double dg(int k, int i, int j) const noexcept { return jet(slot_of(i, j)).grad[static_cast<std::size_t>(k)]; }
    /// d_k d_l g_ij
    double ddg(int k, int l, int i, int j) const noexcept { return jet(slot_of(i, j)).hess(k, l); }

    Matrix4 matrix() const noexcept;

private:
    std::array<FieldJet, 3> jets_;
};

struct Admissibility {
    bool ordered = false;
    /// Leading principal minors from the closed forms
    /// A, (A-B)(A+B), (A-C)(A(C+A)-2B^2), (A-C)^2((A+C)^2-4B^2).
    std::array<double, 4> minors{};
};

Admissibility admissibility(double a, double b, double c) noexcept;

/// Evaluates A, B, C at p. Throws DomainError if p is outside the box or a
/// field cannot be evaluated, AdmissibilityError if 0 < B < C < A fails.
MetricAtPoint metric_at(const ManifoldSpec& spec, const Point& p);

/// Closed-form inverse of the circulant metric:
///   Abar = A(A+C) - 2B^2, Bbar = B(C-A), Cbar = 2B^2 - C(A+C),
///   D = (A-C)((A+C)^2 - 4B^2), g^ij = (circulant Abar Bbar Cbar Bbar) / D.
struct InverseMetricAtPoint {
    double abar = 0.0;
    double bbar = 0.0;
    double cbar = 0.0;
    double d = 0.0;

    double ginv(int i, int j) const noexcept {
        switch (slot_of(i, j)) {
            case Slot::A: return abar / d;
            case Slot::B: return bbar / d;
            case Slot::C: return cbar / d;
        }
        return 0.0;
    }

    Matrix4 matrix() const noexcept;
};

/// Throws SingularityError when D vanishes.
InverseMetricAtPoint inverse_metric(const MetricAtPoint& m);
InverseMetricAtPoint inverse_metric(double a, double b, double c);

// --- the structure q --------------------------------------------------------

/// Matrix of q: (qx)^s = q^s_i x^i with q^s_i = 1 iff i = s+1 (mod 4).
constexpr double q_entry(int s, int i) noexcept { return i == (s + 1) % 4 ? 1.0 : 0.0; }

Matrix4 q_matrix(int power = 1) noexcept;

/// q^k x, i.e. the cyclic left shift (x^2, x^3, x^4, x^1) applied k mod 4 times.
Vector4 q_apply(const Vector4& x, int k = 1) noexcept;

// --- inner products and angles ---------------------------------------------

double inner(const MetricAtPoint& m, const Vector4& x, const Vector4& y) noexcept;
double inner(const Matrix4& g, const Vector4& x, const Vector4& y) noexcept;

/// g(x,y) / sqrt(g(x,x) g(y,y)). Rounding overshoot of at most 1e-12 past
/// +-1 is clamped; anything larger throws.
double cos_angle(const MetricAtPoint& m, const Vector4& x, const Vector4& y);

struct QBasisTest {
    bool induces = false;
    /// ((x1-x3)^2 + (x2-x4)^2)((x1+x3)^2 - (x2+x4)^2) = det[x, qx, q^2x, q^3x]
    double value = 0.0;
};

/// x induces a q-basis iff |value| > 1e-12 |x|^4.
QBasisTest induces_q_basis(const Vector4& x) noexcept;

struct BasisAngles {
    double cos_phi = 0.0;    // cos angle(x, qx)
    double cos_theta = 0.0;  // cos angle(x, q^2 x)
};

/// Cosines of the six pairwise angles in {x, qx, q^2x, q^3x}, ordered
/// (x,qx), (qx,q^2x), (x,q^3x), (q^2x,q^3x), (x,q^2x), (qx,q^3x).
std::array<double, 6> q_basis_cosines(const MetricAtPoint& m, const Vector4& x);

/// Also checks that the first four and the last two cosines agree to
/// rounding and that 4 cos(phi) - cos(theta) < 3; a violation throws
/// std::logic_error. Throws InvalidArgument if x does not induce a q-basis.
BasisAngles basis_angles(const MetricAtPoint& m, const Vector4& x);

/// Returns x with g(x,x) = 1 and |g(x,qx)|, |g(x,q^2x)| <= 1e-10 that
/// induces a q-basis. Gauss-Newton on (g(x,qx), g(x,q^2x), g(x,x)-1) from
/// random starts drawn from `rng`; throws SolverError after 32 failed starts.
Vector4 find_orthogonal_q_basis(const MetricAtPoint& m, std::mt19937_64& rng);

inline constexpr double kOrthogonalityTolerance = 1e-10;
inline constexpr int kSolverRestarts = 32;

}  // namespace circq
