#pragma once

// Degree-one monotone lifts of circle homeomorphisms, and the split
// (winding, fraction) representation of a lifted coordinate.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rotnum/error.hpp"

namespace rotnum {

inline constexpr double kMaxLiftCoordinate = 0x1.0p52;

/// A lifted coordinate x = winding + frac with frac in [0, 1).
struct LiftPoint {
    std::int64_t winding = 0;
    double frac = 0.0;

    [[nodiscard]] static LiftPoint from_real(double x) {
        if (!std::isfinite(x) || std::abs(x) > kMaxLiftCoordinate)
            throw PrecisionError("lift coordinate " + std::to_string(x) +
                                 " exceeds 2^52; renormalize the start point mod 1");
        const double w = std::floor(x);
        return normalized(static_cast<std::int64_t>(w), x - w);
    }

    [[nodiscard]] static LiftPoint normalized(std::int64_t winding, double frac) noexcept {
        const double fl = std::floor(frac);
        winding += static_cast<std::int64_t>(fl);
        frac -= fl;
        if (frac >= 1.0) {
            frac = 0.0;
            ++winding;
        }
        return {winding, frac};
    }

    [[nodiscard]] double real() const noexcept { return static_cast<double>(winding) + frac; }

    friend bool operator==(const LiftPoint&, const LiftPoint&) = default;
};

/// a - b computed from the split representation.
[[nodiscard]] inline double lift_distance(const LiftPoint& a, const LiftPoint& b) noexcept {
    return static_cast<double>(a.winding - b.winding) + (a.frac - b.frac);
}

template <class L>
concept LiftMap = requires(const L& g, double x) {
    { g.eval(x) } -> std::convertible_to<double>;
};

template <class L>
concept SmoothLift = LiftMap<L> && requires(const L& g, double x) {
    { g.dx(x) } -> std::convertible_to<double>;
};

/// Non-smooth lifts declare a Lipschitz constant instead of a derivative.
template <class L>
concept LipschitzLift = LiftMap<L> && requires(const L& g) {
    { g.lipschitz() } -> std::convertible_to<double>;
};

/// One fiber step in split coordinates, using g(x + k) = g(x) + k.
template <LiftMap L>
[[nodiscard]] LiftPoint apply_lift(const L& g, const LiftPoint& p) {
    const double z = g.eval(p.frac);
    if (!std::isfinite(z)) throw EvaluationError("lift evaluation produced a non-finite value");
    LiftPoint out = LiftPoint::normalized(p.winding, z);
    if (std::abs(static_cast<double>(out.winding)) > kMaxLiftCoordinate)
        throw PrecisionError("lift coordinate exceeds 2^52; renormalize the orbit mod 1");
    return out;
}

struct TranslationLift {
    double shift = 0.0;

    [[nodiscard]] double eval(double x) const noexcept { return x + shift; }
    [[nodiscard]] double dx(double) const noexcept { return 1.0; }
};

/// x + shift + amplitude * sin(2 pi (x + phase)); a homeomorphism for |amplitude| < 1 / (2 pi).
struct SineLift {
    double shift = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;

    [[nodiscard]] double eval(double x) const noexcept {
        return x + shift + amplitude * std::sin(2.0 * std::numbers::pi * (x + phase));
    }
    [[nodiscard]] double dx(double x) const noexcept {
        return 1.0 + 2.0 * std::numbers::pi * amplitude * std::cos(2.0 * std::numbers::pi * (x + phase));
    }
};

/// g + k for an integer k: another lift of the same circle map.
template <LiftMap L>
struct ShiftedLift {
    L base;
    std::int64_t k = 0;

    [[nodiscard]] double eval(double x) const { return base.eval(x) + static_cast<double>(k); }
    [[nodiscard]] double dx(double x) const
        requires SmoothLift<L>
    {
        return base.dx(x);
    }
};

/// Piecewise-linear lift from knots (x_i, g_i) on [0, 1] with g(1) = g(0) + 1.
class TabulatedLift {
public:
    TabulatedLift() = default;

    TabulatedLift(std::vector<double> xs, std::vector<double> gs, double shift = 0.0)
        : xs_(std::move(xs)), gs_(std::move(gs)), shift_(shift) {
        if (xs_.size() < 2 || xs_.size() != gs_.size())
            throw DomainError("tabulated lift: need at least two knots with matching x and g columns");
        if (xs_.front() != 0.0 || xs_.back() != 1.0)
            throw DomainError("tabulated lift: knots must start at x = 0 and end at x = 1");
        if (std::abs(gs_.back() - gs_.front() - 1.0) > 1e-12)
            throw DomainError("tabulated lift: degree one requires g(1) = g(0) + 1");
        gs_.back() = gs_.front() + 1.0;
        for (std::size_t i = 1; i < xs_.size(); ++i) {
            if (!(xs_[i] > xs_[i - 1]) || !(gs_[i] > gs_[i - 1]))
                throw DomainError("tabulated lift: x and g must be strictly increasing");
            lipschitz_ = std::max(lipschitz_, (gs_[i] - gs_[i - 1]) / (xs_[i] - xs_[i - 1]));
        }
    }

    [[nodiscard]] TabulatedLift shifted(double by) const {
        TabulatedLift out = *this;
        out.shift_ += by;
        return out;
    }

    [[nodiscard]] double eval(double x) const {
        const double w = std::floor(x);
        const double r = x - w;
        auto it = std::upper_bound(xs_.begin(), xs_.end(), r);
        std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        i = std::clamp<std::size_t>(i, 1, xs_.size() - 1);
        const double t = (r - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
        return w + gs_[i - 1] + t * (gs_[i] - gs_[i - 1]) + shift_;
    }

    [[nodiscard]] double lipschitz() const noexcept { return lipschitz_; }
    [[nodiscard]] const std::vector<double>& xs() const noexcept { return xs_; }
    [[nodiscard]] const std::vector<double>& gs() const noexcept { return gs_; }

private:
    std::vector<double> xs_{0.0, 1.0};
    std::vector<double> gs_{0.0, 1.0};
    double shift_ = 0.0;
    double lipschitz_ = 0.0;
};

} // namespace rotnum
