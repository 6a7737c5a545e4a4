#pragma once

// 2x2 unimodular matrices and their projective action on RP^1, written in the
// circle coordinate x = (direction angle) / pi mod 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "rotnum/error.hpp"

namespace rotnum {

struct TransferMatrix {
    double a = 1.0, b = 0.0; // first row
    double c = 0.0, d = 1.0; // second row

    [[nodiscard]] double det() const noexcept { return a * d - b * c; }
    [[nodiscard]] double trace() const noexcept { return a + d; }
    [[nodiscard]] double frobenius_sq() const noexcept { return a * a + b * b + c * c + d * d; }

    /// Largest singular value squared.
    [[nodiscard]] double norm_sq() const noexcept {
        const double f = frobenius_sq();
        const double dt = det();
        return 0.5 * (f + std::sqrt(std::max(0.0, f * f - 4.0 * dt * dt)));
    }

    [[nodiscard]] std::array<double, 2> apply(double x, double y) const noexcept {
        return {a * x + b * y, c * x + d * y};
    }

    friend TransferMatrix operator*(const TransferMatrix& l, const TransferMatrix& r) noexcept {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }

    [[nodiscard]] static TransferMatrix rotation(double angle) noexcept {
        const double cs = std::cos(angle), sn = std::sin(angle);
        return {cs, -sn, sn, cs};
    }

    [[nodiscard]] static TransferMatrix diagonal(double s) noexcept { return {s, 0.0, 0.0, 1.0 / s}; }
};

/// ||A u||^2 for the unit vector at angle theta.
[[nodiscard]] inline double image_norm_sq(const TransferMatrix& m, double theta) noexcept {
    const auto [x, y] = m.apply(std::cos(theta), std::sin(theta));
    return x * x + y * y;
}

/// Continuous degree-one lift of the projective action of an SL(2, R) matrix.
/// With the polar decomposition A = R(alpha) S, S symmetric positive definite,
///   eval(x) = x + (alpha + angle(u, S u)) / pi + k,
/// where angle(u, S u) stays in (-pi/2, pi/2) and k normalizes eval(0) into [0, 1).
class ProjectiveLift {
public:
    ProjectiveLift() = default;

    explicit ProjectiveLift(const TransferMatrix& m) : m_(m) {
        alpha_ = std::atan2(m.c - m.b, m.a + m.d);
        const double ca = std::cos(alpha_), sa = std::sin(alpha_);
        s11_ = ca * m.a + sa * m.c;
        s22_ = -sa * m.b + ca * m.d;
        s12_ = 0.5 * ((ca * m.b + sa * m.d) + (-sa * m.a + ca * m.c));
        const double at0 = (alpha_ + relative_angle(0.0)) / std::numbers::pi;
        offset_ = -std::floor(at0);
        if (at0 + offset_ >= 1.0) offset_ -= 1.0;
    }

    [[nodiscard]] double eval(double x) const noexcept {
        const double theta = std::numbers::pi * x;
        return x + (alpha_ + relative_angle(theta)) / std::numbers::pi + offset_;
    }

    /// d eval / dx = 1 / ||A u(pi x)||^2 for det A = 1.
    [[nodiscard]] double dx(double x) const noexcept { return 1.0 / image_norm_sq(m_, std::numbers::pi * x); }

    [[nodiscard]] const TransferMatrix& matrix() const noexcept { return m_; }

private:
    [[nodiscard]] double relative_angle(double theta) const noexcept {
        const double cs = std::cos(theta), sn = std::sin(theta);
        const double sx = s11_ * cs + s12_ * sn;
        const double sy = s12_ * cs + s22_ * sn;
        return std::atan2(cs * sy - sn * sx, cs * sx + sn * sy);
    }

    TransferMatrix m_;
    double alpha_ = 0.0;
    double s11_ = 1.0, s12_ = 0.0, s22_ = 1.0;
    double offset_ = 0.0;
};

[[nodiscard]] inline ProjectiveLift projectivize(const TransferMatrix& m) {
    const double dt = m.det();
    if (!std::isfinite(dt) || std::abs(dt - 1.0) > 1e-9)
        throw InvalidMatrixError("projectivize: determinant " + std::to_string(dt) + " differs from 1 by more than 1e-9");
    return ProjectiveLift(m);
}

} // namespace rotnum
