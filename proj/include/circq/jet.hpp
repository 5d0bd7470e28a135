#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace circq {

inline constexpr int kDim = 4;

/// Position of (i, j) in the packed upper triangle of a symmetric 4x4 matrix.
constexpr std::size_t sym_index(int i, int j) noexcept {
    if (i > j) {
        const int t = i;
        i = j;
        j = t;
    }
    return static_cast<std::size_t>(i * kDim - i * (i - 1) / 2 + (j - i));
}

/// Second-order jet of a scalar field on R^4: value, gradient and the
/// symmetric Hessian (10 packed entries, so symmetry holds by storage).
struct FieldJet {
    double value = 0.0;
    std::array<double, kDim> grad{};
    std::array<double, 10> hess_packed{};

    double hess(int i, int j) const noexcept { return hess_packed[sym_index(i, j)]; }
    double& hess(int i, int j) noexcept { return hess_packed[sym_index(i, j)]; }

    static FieldJet constant(double v) noexcept {
        FieldJet j;
        j.value = v;
        return j;
    }

    static FieldJet variable(int index, double v) noexcept {
        FieldJet j;
        j.value = v;
        j.grad[static_cast<std::size_t>(index)] = 1.0;
        return j;
    }

    bool finite() const noexcept {
        if (!std::isfinite(value)) return false;
        for (double g : grad)
            if (!std::isfinite(g)) return false;
        for (double h : hess_packed)
            if (!std::isfinite(h)) return false;
        return true;
    }
};

inline FieldJet operator+(const FieldJet& a, const FieldJet& b) noexcept {
    FieldJet r;
    r.value = a.value + b.value;
    for (std::size_t i = 0; i < 4; ++i) r.grad[i] = a.grad[i] + b.grad[i];
    for (std::size_t i = 0; i < 10; ++i) r.hess_packed[i] = a.hess_packed[i] + b.hess_packed[i];
    return r;
}

inline FieldJet operator-(const FieldJet& a, const FieldJet& b) noexcept {
    FieldJet r;
    r.value = a.value - b.value;
    for (std::size_t i = 0; i < 4; ++i) r.grad[i] = a.grad[i] - b.grad[i];
    for (std::size_t i = 0; i < 10; ++i) r.hess_packed[i] = a.hess_packed[i] - b.hess_packed[i];
    return r;
}

inline FieldJet operator-(const FieldJet& a) noexcept {
    FieldJet r;
    r.value = -a.value;
    for (std::size_t i = 0; i < 4; ++i) r.grad[i] = -a.grad[i];
    for (std::size_t i = 0; i < 10; ++i) r.hess_packed[i] = -a.hess_packed[i];
    return r;
}

inline FieldJet operator*(const FieldJet& a, const FieldJet& b) noexcept {
    FieldJet r;
    r.value = a.value * b.value;
    for (std::size_t i = 0; i < 4; ++i) r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j)
            r.hess(i, j) = a.hess(i, j) * b.value + a.value * b.hess(i, j) +
                           a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i];
    return r;
}

inline FieldJet operator*(double s, const FieldJet& a) noexcept {
    FieldJet r;
    r.value = s * a.value;
    for (std::size_t i = 0; i < 4; ++i) r.grad[i] = s * a.grad[i];
    for (std::size_t i = 0; i < 10; ++i) r.hess_packed[i] = s * a.hess_packed[i];
    return r;
}

/// Composition f(a) given f, f' and f'' evaluated at a.value.
inline FieldJet compose(const FieldJet& a, double f, double df, double d2f) noexcept {
    FieldJet r;
    r.value = f;
    for (std::size_t i = 0; i < 4; ++i) r.grad[i] = df * a.grad[i];
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j)
            r.hess(i, j) = df * a.hess(i, j) + d2f * a.grad[i] * a.grad[j];
    return r;
}

}  // namespace circq
