#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace circq {

/// Coordinates (X^1, ..., X^4) of a point of the chart.
struct Point {
    std::array<double, 4> x{};

    double operator[](std::size_t i) const noexcept { return x[i]; }
    double& operator[](std::size_t i) noexcept { return x[i]; }

    bool finite() const noexcept {
        for (double v : x)
            if (!std::isfinite(v)) return false;
        return true;
    }

    friend bool operator==(const Point&, const Point&) = default;
};

/// Contravariant components x^i of a tangent vector.
struct Vector4 {
    std::array<double, 4> c{};

    double operator[](std::size_t i) const noexcept { return c[i]; }
    double& operator[](std::size_t i) noexcept { return c[i]; }

    static Vector4 basis(std::size_t i) noexcept {
        Vector4 v;
        v.c[i] = 1.0;
        return v;
    }

    double euclidean_norm() const noexcept {
        return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
    }

    double l1_norm() const noexcept {
        return std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) + std::abs(c[3]);
    }

    Vector4& operator+=(const Vector4& o) noexcept {
        for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }

    friend Vector4 operator+(Vector4 a, const Vector4& b) noexcept { return a += b; }

    friend Vector4 operator-(Vector4 a, const Vector4& b) noexcept {
        for (std::size_t i = 0; i < 4; ++i) a.c[i] -= b.c[i];
        return a;
    }

    friend Vector4 operator*(double s, Vector4 a) noexcept {
        for (double& v : a.c) v *= s;
        return a;
    }

    friend bool operator==(const Vector4&, const Vector4&) = default;
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

}  // namespace circq
