#pragma once

// Ergodic base dynamics: the catalog of transformations sigma, their orbits,
// typical-point sampling and Birkhoff averages.

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "rotnum/error.hpp"
#include "rotnum/log.hpp"
#include "rotnum/random.hpp"

namespace rotnum {

inline constexpr int kMaxTorusDim = 4;

/// Golden-mean frequency used by the Fibonacci rotation coding.
inline constexpr double kGoldenAlpha = 0.6180339887498948482; // (sqrt(5) - 1) / 2

enum class BaseKind { irrational_rotation, torus_shift, doubling_map, iid_shift, substitution_subshift };

/// Two-point distribution on {0, 1} with P(1) = p.
struct Bernoulli {
    double p = 0.5;
};

struct UniformReal {
    double lo = 0.0;
    double hi = 1.0;
};

using IidDistribution = std::variant<Bernoulli, UniformReal>;

/// A point of a base system. Angle-type systems use `theta`; iid shifts are
/// positioned at `index` in the two-sided sequence keyed by `stream`.
struct BasePoint {
    std::array<double, kMaxTorusDim> theta{};
    std::int64_t index = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const BasePoint&, const BasePoint&) = default;
};

namespace detail {

[[nodiscard]] inline double wrap_unit(double x) noexcept {
    // x is in [0, 2) after one rotation step; keep the result in [0, 1)
    if (x >= 1.0) x -= 1.0;
    if (x >= 1.0 || x < 0.0) x -= std::floor(x);
    return x;
}

} // namespace detail

class BaseSystem {
public:
    static BaseSystem irrational_rotation(double alpha) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw DomainError("irrational-rotation: alpha must lie in (0, 1), got " + std::to_string(alpha));
        BaseSystem s(BaseKind::irrational_rotation, 1);
        s.alphas_[0] = alpha;
        s.check_rationality();
        return s;
    }

    static BaseSystem torus_shift(const std::vector<double>& alphas) {
        if (alphas.empty() || alphas.size() > static_cast<std::size_t>(kMaxTorusDim))
            throw DomainError("torus-shift: dimension must be between 1 and " + std::to_string(kMaxTorusDim));
        BaseSystem s(BaseKind::torus_shift, static_cast<int>(alphas.size()));
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (!(alphas[i] > 0.0 && alphas[i] < 1.0))
                throw DomainError("torus-shift: every alpha must lie in (0, 1)");
            s.alphas_[i] = alphas[i];
        }
        s.check_rationality();
        return s;
    }

    static BaseSystem doubling_map() { return BaseSystem(BaseKind::doubling_map, 1); }

    static BaseSystem iid_shift(IidDistribution dist, std::uint64_t seed) {
        if (const auto* b = std::get_if<Bernoulli>(&dist); b && !(b->p >= 0.0 && b->p <= 1.0))
            throw DomainError("iid-shift: Bernoulli p must lie in [0, 1]");
        if (const auto* u = std::get_if<UniformReal>(&dist); u && !(u->lo < u->hi))
            throw DomainError("iid-shift: uniform distribution needs lo < hi");
        BaseSystem s(BaseKind::iid_shift, 1);
        s.dist_ = dist;
        s.seed_ = seed;
        return s;
    }

    /// Fibonacci subshift realized through the rotation coding by the golden mean.
    static BaseSystem fibonacci_subshift() {
        BaseSystem s(BaseKind::substitution_subshift, 1);
        s.alphas_[0] = kGoldenAlpha;
        s.rule_ = "fibonacci";
        return s;
    }

    [[nodiscard]] BaseKind kind() const noexcept { return kind_; }
    [[nodiscard]] int dimension() const noexcept { return dim_; }
    [[nodiscard]] double alpha(int i = 0) const noexcept { return alphas_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] const IidDistribution& distribution() const noexcept { return dist_; }
    [[nodiscard]] const std::string& rule() const noexcept { return rule_; }
    [[nodiscard]] const std::optional<std::string>& rationality_warning() const noexcept { return rational_warning_; }

    [[nodiscard]] std::string kind_name() const {
        switch (kind_) {
            case BaseKind::irrational_rotation: return "irrational-rotation";
            case BaseKind::torus_shift: return "torus-shift";
            case BaseKind::doubling_map: return "doubling-map";
            case BaseKind::iid_shift: return "iid-shift";
            case BaseKind::substitution_subshift: return "substitution-subshift";
        }
        return "unknown";
    }

    /// The canonical start point: theta = 0, or index 0 of the system's own stream.
    [[nodiscard]] BasePoint origin() const noexcept {
        BasePoint p;
        p.stream = seed_;
        return p;
    }

    [[nodiscard]] BasePoint point(double theta) const {
        BasePoint p = origin();
        for (int i = 0; i < dim_; ++i) p.theta[static_cast<std::size_t>(i)] = theta;
        validate(p);
        return p;
    }

    /// A mu-typical point: uniform angles, or a fresh iid sequence.
    [[nodiscard]] BasePoint sample(std::uint64_t sample_seed) const {
        BasePoint p = origin();
        const std::uint64_t key = derive_key(seed_ ^ 0xB5E5A3D1C0FFEEULL, sample_seed);
        if (kind_ == BaseKind::iid_shift) {
            p.stream = key;
            return p;
        }
        for (int i = 0; i < dim_; ++i) p.theta[static_cast<std::size_t>(i)] = counter_uniform(key, i);
        return p;
    }

    void validate(const BasePoint& p) const {
        if (kind_ == BaseKind::iid_shift) return;
        for (int i = 0; i < dim_; ++i) {
            const double t = p.theta[static_cast<std::size_t>(i)];
            if (!(t >= 0.0 && t < 1.0))
                throw DomainError(kind_name() + ": state coordinate " + std::to_string(i) + " = " + std::to_string(t) +
                                  " is outside [0, 1)");
        }
    }

    /// sigma. Angle coordinates are reduced mod 1 after every step.
    [[nodiscard]] BasePoint step(BasePoint p) const noexcept {
        switch (kind_) {
            case BaseKind::irrational_rotation:
            case BaseKind::substitution_subshift:
                p.theta[0] = detail::wrap_unit(p.theta[0] + alphas_[0]);
                break;
            case BaseKind::torus_shift:
                for (int i = 0; i < dim_; ++i) {
                    auto& t = p.theta[static_cast<std::size_t>(i)];
                    t = detail::wrap_unit(t + alphas_[static_cast<std::size_t>(i)]);
                }
                break;
            case BaseKind::doubling_map: {
                const double y = 2.0 * p.theta[0];
                p.theta[0] = y >= 1.0 ? y - 1.0 : y;
                break;
            }
            case BaseKind::iid_shift:
                ++p.index;
                break;
        }
        return p;
    }

    /// sigma^n by iteration; O(1) for iid shifts.
    [[nodiscard]] BasePoint advance(BasePoint p, std::int64_t n) const noexcept {
        if (kind_ == BaseKind::iid_shift) {
            p.index += n;
            return p;
        }
        for (std::int64_t k = 0; k < n; ++k) p = step(p);
        return p;
    }

    /// The symbol read at the current position: the iid draw, or the rotation
    /// coding chi_[1 - alpha, 1)(theta) for the substitution subshift.
    [[nodiscard]] double symbol(const BasePoint& p) const noexcept {
        if (kind_ == BaseKind::iid_shift) {
            const double u = counter_uniform(p.stream, p.index);
            if (const auto* b = std::get_if<Bernoulli>(&dist_)) return u < b->p ? 1.0 : 0.0;
            const auto& uni = std::get<UniformReal>(dist_);
            return uni.lo + (uni.hi - uni.lo) * u;
        }
        if (kind_ == BaseKind::substitution_subshift) return p.theta[0] >= 1.0 - alphas_[0] ? 1.0 : 0.0;
        return p.theta[0];
    }

private:
    BaseSystem(BaseKind kind, int dim) : kind_(kind), dim_(dim) {}

    void check_rationality() {
        for (int i = 0; i < dim_; ++i) {
            const double a = alphas_[static_cast<std::size_t>(i)];
            for (int q = 1; q <= 1000; ++q) {
                const double p = std::round(a * q);
                if (std::abs(a - p / q) < 1e-12) {
                    std::ostringstream msg;
                    msg << kind_name() << ": alpha = " << a << " is within 1e-12 of the rational "
                        << static_cast<long long>(p) << '/' << q << "; the rotation is not ergodic";
                    rational_warning_ = msg.str();
                    warn(*rational_warning_);
                    return;
                }
            }
        }
    }

    BaseKind kind_;
    int dim_;
    std::array<double, kMaxTorusDim> alphas_{};
    IidDistribution dist_ = Bernoulli{};
    std::uint64_t seed_ = 0;
    std::string rule_;
    std::optional<std::string> rational_warning_;
};

enum class Integrability { bounded, log_integrable_asserted };

struct Observable {
    std::function<double(const BasePoint&)> eval;
    Integrability integrability = Integrability::bounded;

    double operator()(const BasePoint& p) const { return eval(p); }
};

/// Elements sigma^k(omega0) for k = 0..n-1.
[[nodiscard]] inline std::vector<BasePoint> orbit(const BaseSystem& sys, const BasePoint& omega0, std::int64_t n) {
    if (n < 1) throw DomainError("orbit: n must be at least 1");
    sys.validate(omega0);
    if (sys.kind() == BaseKind::doubling_map && n > 54)
        warn("doubling-map: binary64 orbits collapse to 0 after at most 53 steps");
    std::vector<BasePoint> out;
    out.reserve(static_cast<std::size_t>(n));
    BasePoint p = omega0;
    for (std::int64_t k = 0; k < n; ++k) {
        out.push_back(p);
        p = sys.step(p);
    }
    return out;
}

/// (1/n) sum_{l=1}^{n} phi(sigma^{l-1} omega0), compensated summation.
template <class Phi>
    requires std::invocable<const Phi&, const BasePoint&>
[[nodiscard]] double birkhoff_average(const BaseSystem& sys, const Phi& phi, const BasePoint& omega0, std::int64_t n) {
    if (n < 1) throw DomainError("birkhoff_average: n must be at least 1");
    sys.validate(omega0);
    double sum = 0.0;
    double comp = 0.0;
    BasePoint p = omega0;
    for (std::int64_t k = 0; k < n; ++k) {
        const double v = static_cast<double>(phi(p));
        if (!std::isfinite(v))
            throw EvaluationError("birkhoff_average: observable is not finite at orbit index " + std::to_string(k));
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        p = sys.step(p);
    }
    return sum / static_cast<double>(n);
}

} // namespace rotnum
