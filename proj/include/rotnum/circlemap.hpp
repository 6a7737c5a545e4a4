#pragma once

// One-parameter families of circle cocycles over a base system: fiberwise
// compositions, rotation-number estimates and the derivative bounds C and M.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rotnum/base.hpp"
#include "rotnum/lift.hpp"
#include "rotnum/parallel.hpp"

namespace rotnum {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] bool contains(double a) const noexcept { return a >= lo && a <= hi; }
    [[nodiscard]] double length() const noexcept { return hi - lo; }
};

struct RotationEstimate {
    double value = 0.0;
    std::int64_t n = 0;
    double error_radius = 0.0;
    double x0 = 0.0;
    BasePoint omega0;
};

/// (a, omega) -> lift of g_{a, omega}, with the constants C and M_omega.
template <class F>
concept CocycleFamily = requires(const F& f, double a, const BasePoint& w) {
    { f.base() } -> std::convertible_to<const BaseSystem&>;
    { f.interval() } -> std::convertible_to<Interval>;
    { f.lift(a, w) } -> LiftMap;
    { f.m_of(w) } -> std::convertible_to<double>;
    { f.param_constant() } -> std::convertible_to<double>;
    { f.name() } -> std::convertible_to<std::string>;
};

/// Families that know |d g / d a| pointwise.
template <class F>
concept ParamDifferentiableFamily = CocycleFamily<F> && requires(const F& f, double a, const BasePoint& w, double x) {
    { f.param_derivative(a, w, x) } -> std::convertible_to<double>;
};

/// Families with a specialized orbit engine for the same lifts.
template <class F>
concept FastRotationFamily =
    CocycleFamily<F> && requires(const F& f, double a, const BasePoint& w, double x, std::int64_t n) {
        { f.fast_rotation(a, w, x, n) } -> std::same_as<RotationEstimate>;
    };

template <class F>
concept FastCurveFamily = CocycleFamily<F> &&
    requires(const F& f, std::span<const double> grid, const BasePoint& w, double x, std::int64_t n, int threads) {
        { f.fast_rotation_curve(grid, w, x, n, threads) } -> std::same_as<std::vector<RotationEstimate>>;
    };

template <CocycleFamily F>
void check_parameter(const F& fam, double a) {
    const Interval j = fam.interval();
    if (!j.contains(a))
        throw ParameterRangeError(fam.name() + ": parameter " + std::to_string(a) + " outside J = [" +
                                  std::to_string(j.lo) + ", " + std::to_string(j.hi) + "]");
}

/// Suprema taken on grids are inflated by this factor before use as C or M.
[[nodiscard]] inline double sup_padding(int grid) noexcept { return 1.0 + 10.0 / static_cast<double>(grid); }

// ---------------------------------------------------------------------------
// Catalog families
// ---------------------------------------------------------------------------

/// x + a over any base.
class RigidFamily {
public:
    RigidFamily(BaseSystem base, Interval j) : base_(std::move(base)), j_(j) {}

    [[nodiscard]] const BaseSystem& base() const noexcept { return base_; }
    [[nodiscard]] Interval interval() const noexcept { return j_; }
    [[nodiscard]] TranslationLift lift(double a, const BasePoint&) const noexcept { return {a}; }
    [[nodiscard]] double m_of(const BasePoint&) const noexcept { return 2.0; }
    [[nodiscard]] double param_constant() const noexcept { return 1.0; }
    [[nodiscard]] double param_derivative(double, const BasePoint&, double) const noexcept { return 1.0; }
    [[nodiscard]] std::string name() const { return "rigid"; }

private:
    BaseSystem base_;
    Interval j_;
};

/// x + a + eps sin(2 pi (x + phase(omega))) with a phase read from the base point.
class SineFamily {
public:
    SineFamily(BaseSystem base, Interval j, double amplitude) : base_(std::move(base)), j_(j), amplitude_(amplitude) {
        if (!(std::abs(amplitude) < 1.0 / (2.0 * std::numbers::pi)))
            throw DomainError("sine family: |amplitude| must be below 1/(2 pi) for the maps to be homeomorphisms");
    }

    [[nodiscard]] const BaseSystem& base() const noexcept { return base_; }
    [[nodiscard]] Interval interval() const noexcept { return j_; }
    [[nodiscard]] double amplitude() const noexcept { return amplitude_; }

    [[nodiscard]] double phase(const BasePoint& w) const noexcept {
        if (base_.kind() == BaseKind::iid_shift) return counter_uniform(w.stream, w.index, 1);
        return w.theta[0];
    }

    [[nodiscard]] SineLift lift(double a, const BasePoint& w) const noexcept { return {a, amplitude_, phase(w)}; }
    [[nodiscard]] double m_of(const BasePoint&) const noexcept {
        return std::max(2.0, 1.0 + 2.0 * std::numbers::pi * std::abs(amplitude_));
    }
    [[nodiscard]] double param_constant() const noexcept { return 1.0; }
    [[nodiscard]] double param_derivative(double, const BasePoint&, double) const noexcept { return 1.0; }
    [[nodiscard]] std::string name() const { return "sine"; }

private:
    BaseSystem base_;
    Interval j_;
    double amplitude_;
};

/// A user-tabulated piecewise-linear lift translated by a. Lipschitz, not smooth.
class TabulatedFamily {
public:
    TabulatedFamily(BaseSystem base, Interval j, TabulatedLift table)
        : base_(std::move(base)), j_(j), table_(std::move(table)) {}

    [[nodiscard]] const BaseSystem& base() const noexcept { return base_; }
    [[nodiscard]] Interval interval() const noexcept { return j_; }
    [[nodiscard]] TabulatedLift lift(double a, const BasePoint&) const { return table_.shifted(a); }
    [[nodiscard]] double m_of(const BasePoint&) const noexcept { return std::max(2.0, table_.lipschitz()); }
    [[nodiscard]] double param_constant() const noexcept { return 1.0; }
    [[nodiscard]] double param_derivative(double, const BasePoint&, double) const noexcept { return 1.0; }
    [[nodiscard]] std::string name() const { return "tabulated"; }
    [[nodiscard]] const TabulatedLift& table() const noexcept { return table_; }

private:
    BaseSystem base_;
    Interval j_;
    TabulatedLift table_;
};

// ---------------------------------------------------------------------------
// Fiberwise compositions
// ---------------------------------------------------------------------------

/// G_{n,a,omega0}(x) in split coordinates; the innermost map uses omega0.
template <CocycleFamily F>
[[nodiscard]] LiftPoint compose_point(const F& fam, double a, const BasePoint& omega0, std::int64_t n, LiftPoint p) {
    check_parameter(fam, a);
    const BaseSystem& sys = fam.base();
    BasePoint w = omega0;
    for (std::int64_t k = 0; k < n; ++k) {
        p = apply_lift(fam.lift(a, w), p);
        w = sys.step(w);
    }
    return p;
}

template <CocycleFamily F>
[[nodiscard]] double compose_lift(const F& fam, double a, const BasePoint& omega0, std::int64_t n, double x) {
    check_parameter(fam, a);
    if (n == 0) return x;
    return compose_point(fam, a, omega0, n, LiftPoint::from_real(x)).real();
}

/// Upper and lower convex hulls of a stream of points with increasing
/// abscissa. max/min of (y - slope * k) over all pushed points is attained at a
/// hull vertex, so the oscillation is exact for any slope chosen afterwards.
class OscillationHull {
public:
    void push(double k, double y) {
        const Pt p{k, y};
        while (upper_.size() >= 2 && cross(upper_[upper_.size() - 2], upper_.back(), p) >= 0.0) upper_.pop_back();
        upper_.push_back(p);
        while (lower_.size() >= 2 && cross(lower_[lower_.size() - 2], lower_.back(), p) <= 0.0) lower_.pop_back();
        lower_.push_back(p);
    }

    [[nodiscard]] double oscillation(double slope) const noexcept {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& p : upper_) hi = std::max(hi, p.y - slope * p.k);
        for (const auto& p : lower_) lo = std::min(lo, p.y - slope * p.k);
        return upper_.empty() ? 0.0 : hi - lo;
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return upper_.size() + lower_.size(); }

private:
    struct Pt {
        double k;
        double y;
    };
    static double cross(const Pt& o, const Pt& a, const Pt& b) noexcept {
        return (a.k - o.k) * (b.y - o.y) - (a.y - o.y) * (b.k - o.k);
    }
    std::vector<Pt> upper_;
    std::vector<Pt> lower_;
};

/// First index of the error-radius window: the last n/2 steps.
[[nodiscard]] constexpr std::int64_t error_window_start(std::int64_t n) noexcept { return n - n / 2; }

/// Rotation number by direct lift composition. The error radius is
/// (osc_{k in last n/2} (G_k(x0) - x0 - k value) + 1) / n.
template <CocycleFamily F>
[[nodiscard]] RotationEstimate rotation_number_generic(const F& fam, double a, const BasePoint& omega0, double x0,
                                                       std::int64_t n) {
    check_parameter(fam, a);
    if (n < 100) throw PreconditionError("rotation_number: n must be at least 100, got " + std::to_string(n));
    fam.base().validate(omega0);
    const BaseSystem& sys = fam.base();
    const LiftPoint start = LiftPoint::from_real(x0);
    const std::int64_t window = error_window_start(n);
    OscillationHull hull;
    LiftPoint p = start;
    BasePoint w = omega0;
    LiftPoint anchor = start;
    for (std::int64_t k = 1; k <= n; ++k) {
        p = apply_lift(fam.lift(a, w), p);
        w = sys.step(w);
        if (k == window) anchor = p;
        if (k >= window) hull.push(static_cast<double>(k - window), lift_distance(p, anchor));
    }
    RotationEstimate est;
    est.value = lift_distance(p, start) / static_cast<double>(n);
    est.n = n;
    est.x0 = x0;
    est.omega0 = omega0;
    est.error_radius = (hull.oscillation(est.value) + 1.0) / static_cast<double>(n);
    return est;
}

template <CocycleFamily F>
[[nodiscard]] RotationEstimate rotation_number(const F& fam, double a, const BasePoint& omega0, double x0,
                                               std::int64_t n) {
    if constexpr (FastRotationFamily<F>) {
        check_parameter(fam, a);
        if (n < 100) throw PreconditionError("rotation_number: n must be at least 100, got " + std::to_string(n));
        fam.base().validate(omega0);
        return fam.fast_rotation(a, omega0, x0, n);
    } else {
        return rotation_number_generic(fam, a, omega0, x0, n);
    }
}

/// (x'_n - x_n) / n with both orbits started at x0 = 0 over the same omega0.
template <CocycleFamily F>
[[nodiscard]] double rotation_difference(const F& fam, double a, double a2, const BasePoint& omega0, std::int64_t n) {
    check_parameter(fam, a);
    check_parameter(fam, a2);
    if (n < 1) throw PreconditionError("rotation_difference: n must be positive");
    if (a == a2) return 0.0;
    if constexpr (FastRotationFamily<F>) {
        if (n >= 100) {
            const RotationEstimate r1 = fam.fast_rotation(a, omega0, 0.0, n);
            const RotationEstimate r2 = fam.fast_rotation(a2, omega0, 0.0, n);
            return r2.value - r1.value;
        }
    }
    const LiftPoint p = compose_point(fam, a, omega0, n, LiftPoint{});
    const LiftPoint q = compose_point(fam, a2, omega0, n, LiftPoint{});
    return lift_distance(q, p) / static_cast<double>(n);
}

/// Rotation numbers over a parameter grid, all from the same (omega0, x0).
template <CocycleFamily F>
[[nodiscard]] std::vector<RotationEstimate> rotation_curve(const F& fam, std::span<const double> grid,
                                                           const BasePoint& omega0, double x0, std::int64_t n,
                                                           int threads = 1) {
    for (double a : grid) check_parameter(fam, a);
    if constexpr (FastCurveFamily<F>) {
        return fam.fast_rotation_curve(grid, omega0, x0, n, threads);
    } else {
        std::vector<RotationEstimate> out(grid.size());
        parallel_for(grid.size(), threads, [&](std::size_t i) { out[i] = rotation_number(fam, grid[i], omega0, x0, n); });
        return out;
    }
}

// ---------------------------------------------------------------------------
// Derivative bounds
// ---------------------------------------------------------------------------

namespace detail {

[[nodiscard]] inline std::vector<double> parameter_samples(const Interval& j, int grid) {
    std::vector<double> out(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) out[static_cast<std::size_t>(i)] = j.lo + j.length() * i / grid;
    out.back() = j.hi;
    return out;
}

} // namespace detail

/// max(2, padded sup over an (x, a) lattice of |d g_{a,omega} / dx|); Lipschitz
/// lifts contribute their declared constant.
template <CocycleFamily F>
[[nodiscard]] double lipschitz_bound(const F& fam, const BasePoint& omega, int grid) {
    if (grid < 64) throw PreconditionError("lipschitz_bound: grid must be at least 64");
    double sup = 0.0;
    for (double a : detail::parameter_samples(fam.interval(), grid)) {
        const auto g = fam.lift(a, omega);
        using L = std::remove_cvref_t<decltype(g)>;
        if constexpr (SmoothLift<L>) {
            for (int i = 0; i < grid; ++i) {
                const double d = g.dx(static_cast<double>(i) / grid);
                if (!std::isfinite(d)) throw EvaluationError("lipschitz_bound: non-finite x-derivative");
                sup = std::max(sup, std::abs(d));
            }
        } else {
            static_assert(LipschitzLift<L>, "lifts must provide dx(x) or lipschitz()");
            sup = std::max(sup, g.lipschitz());
        }
    }
    if constexpr (!SmoothLift<std::remove_cvref_t<decltype(fam.lift(0.0, omega))>>) return std::max(2.0, sup);
    return std::max(2.0, sup * sup_padding(grid));
}

/// Padded sup of |d g / d a| over (x, a) lattices at `omega_samples` points of
/// a sampled base orbit.
template <ParamDifferentiableFamily F>
[[nodiscard]] double param_bound(const F& fam, int grid, int omega_samples = 32) {
    if (grid < 64) throw PreconditionError("param_bound: grid must be at least 64");
    const BaseSystem& sys = fam.base();
    BasePoint w = sys.sample(0);
    const auto as = detail::parameter_samples(fam.interval(), grid);
    double sup = 0.0;
    for (int s = 0; s < omega_samples; ++s) {
        for (double a : as) {
            for (int i = 0; i < grid; ++i) {
                const double d = fam.param_derivative(a, w, static_cast<double>(i) / grid);
                if (!std::isfinite(d)) throw EvaluationError("param_bound: non-finite parameter derivative");
                sup = std::max(sup, std::abs(d));
            }
        }
        w = sys.step(w);
    }
    return sup * sup_padding(grid);
}

} // namespace rotnum
