#pragma once

// Ergodic Schrodinger operators  [H phi](n) = phi(n+1) + phi(n-1) + f(sigma^n omega) phi(n):
// potential models, transfer matrices, the projectivized Schrodinger cocycle
// as a circle-cocycle family, and the integrated density of states computed
// by Dirichlet eigenvalue counting and by rotation numbers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotnum/base.hpp"
#include "rotnum/circlemap.hpp"
#include "rotnum/grid.hpp"
#include "rotnum/parallel.hpp"
#include "rotnum/sl2.hpp"

namespace rotnum {

enum class ModelKind { free, anderson_bernoulli, anderson_uniform, almost_mathieu, fibonacci, custom };

[[nodiscard]] inline std::string model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::free: return "free";
        case ModelKind::anderson_bernoulli: return "anderson-bernoulli";
        case ModelKind::anderson_uniform: return "anderson-uniform";
        case ModelKind::almost_mathieu: return "almost-mathieu";
        case ModelKind::fibonacci: return "fibonacci";
        case ModelKind::custom: return "custom";
    }
    return "custom";
}

/// V_omega(n) = f(sigma^n omega). log(1 + |f|) integrability is asserted, not verified.
struct PotentialModel {
    BaseSystem base;
    Observable f;
    std::optional<double> sup_bound; // nullopt: unbounded
    bool log_integrable = true;
    ModelKind kind = ModelKind::custom;
    double coupling = 0.0;

    [[nodiscard]] double operator()(const BasePoint& w) const { return f(w); }
    [[nodiscard]] std::string name() const { return model_kind_name(kind); }
    [[nodiscard]] bool bounded() const noexcept { return sup_bound.has_value(); }

    static PotentialModel free(BaseSystem base = BaseSystem::irrational_rotation(kGoldenAlpha)) {
        PotentialModel m{std::move(base), {}, 0.0, true, ModelKind::free, 0.0};
        m.f = Observable{[](const BasePoint&) { return 0.0; }, Integrability::bounded};
        return m;
    }

    static PotentialModel anderson_bernoulli(double lambda, std::uint64_t seed, double p = 0.5) {
        PotentialModel m{BaseSystem::iid_shift(Bernoulli{p}, seed), {}, std::abs(lambda), true,
                         ModelKind::anderson_bernoulli, lambda};
        m.f = Observable{[sys = m.base, lambda](const BasePoint& w) { return lambda * sys.symbol(w); },
                         Integrability::bounded};
        return m;
    }

    /// iid potential uniform on [-lambda/2, lambda/2].
    static PotentialModel anderson_uniform(double lambda, std::uint64_t seed) {
        const double h = 0.5 * std::abs(lambda);
        if (!(h > 0.0)) throw DomainError("anderson-uniform: lambda must be nonzero");
        PotentialModel m{BaseSystem::iid_shift(UniformReal{-h, h}, seed), {}, h, true, ModelKind::anderson_uniform,
                         lambda};
        m.f = Observable{[sys = m.base](const BasePoint& w) { return sys.symbol(w); }, Integrability::bounded};
        return m;
    }

    /// f(theta) = 2 lambda cos(2 pi theta) over the rotation by alpha.
    static PotentialModel almost_mathieu(double lambda, double alpha = kGoldenAlpha) {
        PotentialModel m{BaseSystem::irrational_rotation(alpha), {}, 2.0 * std::abs(lambda), true,
                         ModelKind::almost_mathieu, lambda};
        m.f = Observable{[lambda](const BasePoint& w) { return 2.0 * lambda * std::cos(2.0 * std::numbers::pi * w.theta[0]); },
                         Integrability::bounded};
        return m;
    }

    /// f = lambda chi_[1 - alpha, 1)(theta), the Fibonacci rotation coding.
    static PotentialModel fibonacci(double lambda) {
        PotentialModel m{BaseSystem::fibonacci_subshift(), {}, std::abs(lambda), true, ModelKind::fibonacci, lambda};
        m.f = Observable{[sys = m.base, lambda](const BasePoint& w) { return lambda * sys.symbol(w); },
                         Integrability::bounded};
        return m;
    }
};

/// f(sigma^{first + l} omega) for l = 0..count-1.
[[nodiscard]] inline std::vector<double> potential_sequence(const PotentialModel& model, const BasePoint& omega,
                                                            std::int64_t count, std::int64_t first = 0) {
    model.base.validate(omega);
    std::vector<double> v(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    BasePoint w = model.base.advance(omega, first);
    for (std::int64_t l = 0; l < count; ++l) {
        const double x = model(w);
        if (!std::isfinite(x))
            throw EvaluationError("potential is not finite at orbit index " + std::to_string(first + l));
        v[static_cast<std::size_t>(l)] = x;
        w = model.base.step(w);
    }
    return v;
}

/// A_E(omega) = ((E - f(omega), -1), (1, 0)).
[[nodiscard]] inline TransferMatrix transfer_matrix(const PotentialModel& model, double energy, const BasePoint& w) {
    const double v = model(w);
    if (!std::isfinite(v) || !std::isfinite(energy))
        throw EvaluationError("transfer_matrix: potential or energy is not finite");
    return {energy - v, -1.0, 1.0, 0.0};
}

/// ||A_E||^2 for the Schrodinger matrix with top-left entry c.
[[nodiscard]] inline double schrodinger_norm_sq(double c) noexcept {
    const double f = c * c + 2.0;
    return 0.5 * (f + std::sqrt(f * f - 4.0));
}

// ---------------------------------------------------------------------------
// Projectivized cocycle on the circle of vector directions
// ---------------------------------------------------------------------------

/// Projective lift of ((c, -1), (1, 0)) in the RP^1 coordinate y = angle / pi:
///   P(y) = k + 1/2 - atan(c - tan(pi r)) / pi,  k = floor(y + 1/2), r = y - k.
/// Each cell [k - 1/2, k + 1/2) maps onto [k, k + 1); P(0) = arccot(c) / pi lies in
/// (0, 1), so this is the canonical representative and is continuous in c.
[[nodiscard]] inline double schrodinger_projective_eval(double c, double y) noexcept {
    const double k = std::floor(y + 0.5);
    const double r = y - k;
    return k + 0.5 - std::atan(c - std::tan(std::numbers::pi * r)) / std::numbers::pi;
}

/// The Schrodinger cocycle acting on directions of nonzero vectors, x = angle / (2 pi):
/// g(x) = P(2x) / 2. This is the circle on which N(E) = 1 - 2 rho(E).
struct SchrodingerLift {
    double c = 0.0; // E - f(omega)

    [[nodiscard]] double eval(double x) const noexcept { return 0.5 * schrodinger_projective_eval(c, 2.0 * x); }

    [[nodiscard]] double dx(double x) const noexcept {
        const double theta = 2.0 * std::numbers::pi * x;
        const double cs = std::cos(theta), sn = std::sin(theta);
        const double u = c * cs - sn;
        return 1.0 / (u * u + cs * cs);
    }

    /// d g / d E.
    [[nodiscard]] double dc(double x) const noexcept {
        const double t = c - std::tan(2.0 * std::numbers::pi * x);
        return -0.5 / (std::numbers::pi * (1.0 + t * t));
    }
};

namespace detail {

/// Projective state: y = winding + angle(p, q) / pi with (p, q) in the half plane
/// p > 0 or (p = 0, q < 0), i.e. angle in [-pi/2, pi/2).
struct ProjectiveState {
    std::int64_t winding = 0;
    double p = 1.0;
    double q = 0.0;

    static ProjectiveState from_y(double y) {
        if (!std::isfinite(y) || std::abs(y) > kMaxLiftCoordinate)
            throw PrecisionError("lift coordinate exceeds 2^52; renormalize the start point mod 1");
        const double k = std::floor(y + 0.5);
        const double r = y - k;
        return {static_cast<std::int64_t>(k), std::cos(std::numbers::pi * r), std::sin(std::numbers::pi * r)};
    }

    [[nodiscard]] double fraction() const noexcept { return std::atan2(q, p) / std::numbers::pi; }

    /// Lower end of the quarter turn [f, f + 1/4] holding fraction().
    [[nodiscard]] double quarter_floor() const noexcept {
        return 0.25 * (static_cast<double>(q > p) - static_cast<double>(q < 0.0) - static_cast<double>(-q > p));
    }

    /// (p, q) <- (c p - q, p), keeping the winding in the integer part.
    void step(double c) noexcept {
        const double np = c * p - q;
        const bool flip = !(np > 0.0);
        winding += flip;
        const double sign = flip ? -1.0 : 1.0;
        q = sign * p;
        p = sign * np;
        const double m = std::max(std::abs(p), std::abs(q));
        if (m > 0x1.0p400) {
            p *= 0x1.0p-400;
            q *= 0x1.0p-400;
        } else if (m < 0x1.0p-400) {
            p *= 0x1.0p400;
            q *= 0x1.0p400;
        }
    }
};

} // namespace detail

namespace detail {

/// L energies advanced in lockstep over one potential sequence; the lanes are
/// independent, which hides the latency of each step.
template <std::size_t L>
void schrodinger_rotation_lanes(const double* energies, std::span<const double> potential, double x0,
                                RotationEstimate* out) {
    const auto n = static_cast<std::int64_t>(potential.size());
    if (n < 1) throw PreconditionError("schrodinger_rotation: empty potential");
    const std::int64_t window = error_window_start(n);
    const ProjectiveState start = ProjectiveState::from_y(2.0 * x0);
    std::array<ProjectiveState, L> s, anchor;
    s.fill(start);
    for (std::int64_t k = 1; k <= n; ++k) {
        const double v = potential[static_cast<std::size_t>(k - 1)];
        for (std::size_t l = 0; l < L; ++l) s[l].step(energies[l] - v);
        if (k == window) anchor = s;
    }
    std::array<double, L> rho_y, anchor_frac, hi{}, lo{};
    for (std::size_t l = 0; l < L; ++l) {
        const double total = static_cast<double>(s[l].winding - start.winding) + (s[l].fraction() - start.fraction());
        rho_y[l] = total / static_cast<double>(n);
        anchor_frac[l] = anchor[l].fraction();
    }
    std::array<ProjectiveState, L> t = anchor;
    for (std::int64_t k = window + 1; k <= n; ++k) {
        const double v = potential[static_cast<std::size_t>(k - 1)];
        const auto steps = static_cast<double>(k - window);
        for (std::size_t l = 0; l < L; ++l) {
            t[l].step(energies[l] - v);
            const double base =
                static_cast<double>(t[l].winding - anchor[l].winding) - anchor_frac[l] - steps * rho_y[l];
            const double floor = base + t[l].quarter_floor();
            if (floor + 0.25 > hi[l] || floor < lo[l]) {
                const double y = base + t[l].fraction();
                hi[l] = std::max(hi[l], y);
                lo[l] = std::min(lo[l], y);
            }
        }
    }
    for (std::size_t l = 0; l < L; ++l) {
        out[l].value = 0.5 * rho_y[l];
        out[l].n = n;
        out[l].x0 = x0;
        out[l].error_radius = (0.5 * (hi[l] - lo[l]) + 1.0) / static_cast<double>(n);
    }
}

} // namespace detail

/// Rotation number of the Schrodinger cocycle (direction-circle units) along a
/// precomputed potential sequence, by exact integer winding counts. Two passes:
/// the second replays the last n/2 steps and evaluates the fractional part only
/// where it can move the oscillation extremes.
[[nodiscard]] inline RotationEstimate schrodinger_rotation(double energy, std::span<const double> potential, double x0) {
    RotationEstimate est;
    detail::schrodinger_rotation_lanes<1>(&energy, potential, x0, &est);
    return est;
}

/// schrodinger_rotation on every energy, several at a time.
[[nodiscard]] inline std::vector<RotationEstimate> schrodinger_rotation_curve(std::span<const double> energies,
                                                                              std::span<const double> potential,
                                                                              double x0, int threads = 1) {
    constexpr std::size_t kLanes = 2;
    std::vector<RotationEstimate> out(energies.size());
    const std::size_t blocks = (energies.size() + kLanes - 1) / kLanes;
    parallel_for(blocks, threads, [&](std::size_t b) {
        const std::size_t first = b * kLanes;
        if (first + kLanes <= energies.size()) {
            detail::schrodinger_rotation_lanes<kLanes>(energies.data() + first, potential, x0, out.data() + first);
        } else {
            for (std::size_t i = first; i < energies.size(); ++i) out[i] = schrodinger_rotation(energies[i], potential, x0);
        }
    });
    return out;
}

/// The projectivized Schrodinger cocycle E -> g_{E, omega} as a circle-cocycle family.
class SchrodingerFamily {
public:
    SchrodingerFamily(PotentialModel model, Interval j) : model_(std::move(model)), j_(j) {
        if (!(j_.lo <= j_.hi) || !std::isfinite(j_.lo) || !std::isfinite(j_.hi))
            throw ConfigError("schrodinger family: energy interval must be closed and bounded");
        // grid suprema can miss the narrow peaks of |dg/dE| at large |E - f|; the
        // exact sup 1/(2 pi) is attained for every E, omega
        c_ = std::max(param_bound(*this, 256, 16), 0.5 / std::numbers::pi);
    }

    [[nodiscard]] const BaseSystem& base() const noexcept { return model_.base; }
    [[nodiscard]] const PotentialModel& model() const noexcept { return model_; }
    [[nodiscard]] Interval interval() const noexcept { return j_; }
    [[nodiscard]] std::string name() const {
        std::string out = "schrodinger-";
        out += model_.name();
        return out;
    }

    [[nodiscard]] SchrodingerLift lift(double energy, const BasePoint& w) const { return {energy - model_(w)}; }

    /// max(2, sup_{E in J} ||A_E(omega)||^2); the sup sits at an endpoint of J.
    [[nodiscard]] double m_of(const BasePoint& w) const {
        const double v = model_(w);
        const double c = std::max(std::abs(j_.lo - v), std::abs(j_.hi - v));
        return std::max(2.0, schrodinger_norm_sq(c));
    }

    [[nodiscard]] double param_constant() const noexcept { return c_; }

    [[nodiscard]] double param_derivative(double energy, const BasePoint& w, double x) const {
        return lift(energy, w).dc(x);
    }

    [[nodiscard]] RotationEstimate fast_rotation(double energy, const BasePoint& omega0, double x0,
                                                 std::int64_t n) const {
        const auto v = potential_sequence(model_, omega0, n);
        RotationEstimate est = schrodinger_rotation(energy, v, x0);
        est.omega0 = omega0;
        return est;
    }

    [[nodiscard]] std::vector<RotationEstimate> fast_rotation_curve(std::span<const double> energies,
                                                                    const BasePoint& omega0, double x0, std::int64_t n,
                                                                    int threads) const {
        if (n < 100) throw PreconditionError("rotation_number: n must be at least 100, got " + std::to_string(n));
        const auto v = potential_sequence(model_, omega0, n);
        auto out = schrodinger_rotation_curve(energies, v, x0, threads);
        for (auto& e : out) e.omega0 = omega0;
        return out;
    }

private:
    PotentialModel model_;
    Interval j_;
    double c_ = 0.0;
};

[[nodiscard]] inline SchrodingerFamily schrodinger_family(const PotentialModel& model, Interval j) {
    return SchrodingerFamily(model, j);
}

// ---------------------------------------------------------------------------
// Continuous lift representatives for general SL(2, R) families
// ---------------------------------------------------------------------------

/// Integer offsets k_i making projectivize(A(a_i)) + k_i continuous along the
/// grid: sup_x |g_{i+1} - g_i| < 1/2 at every step, starting from the canonical
/// representative at the first point. Requires C * h < 1/2 for every spacing h.
template <class MatrixFn>
[[nodiscard]] std::vector<std::int64_t> continuity_offsets(const MatrixFn& matrix_at, std::span<const double> grid,
                                                           double c_bound) {
    std::vector<std::int64_t> offsets(grid.size(), 0);
    if (grid.empty()) return offsets;
    constexpr int kProbe = 64;
    ProjectiveLift prev = projectivize(matrix_at(grid[0]));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double h = std::abs(grid[i] - grid[i - 1]);
        if (!(c_bound * h < 0.5))
            throw PreconditionError("continuity walk: grid spacing " + std::to_string(h) +
                                    " violates C h < 1/2 with C = " + std::to_string(c_bound));
        const ProjectiveLift next = projectivize(matrix_at(grid[i]));
        double mean = 0.0;
        for (int s = 0; s < kProbe; ++s) {
            const double x = static_cast<double>(s) / kProbe;
            mean += prev.eval(x) + static_cast<double>(offsets[i - 1]) - next.eval(x);
        }
        const auto k = static_cast<std::int64_t>(std::llround(mean / kProbe));
        double sup = 0.0;
        for (int s = 0; s < kProbe; ++s) {
            const double x = static_cast<double>(s) / kProbe;
            sup = std::max(sup, std::abs(next.eval(x) + static_cast<double>(k) -
                                         prev.eval(x) - static_cast<double>(offsets[i - 1])));
        }
        if (!(sup < 0.5)) throw PreconditionError("continuity walk: consecutive lifts differ by at least 1/2");
        offsets[i] = k;
        prev = next;
    }
    return offsets;
}

/// A general family omega, a -> A(a, omega) in SL(2, R), acting on RP^1 in the
/// coordinate angle / pi. Lifts are made continuous in a by walking from J.lo
/// in steps of at most 1 / (4 C).
template <class MatrixFn>
class ProjectiveFamily {
public:
    ProjectiveFamily(BaseSystem base, Interval j, MatrixFn matrix_at, double c_declared)
        : base_(std::move(base)), j_(j), matrix_at_(std::move(matrix_at)), c_(c_declared) {}

    [[nodiscard]] const BaseSystem& base() const noexcept { return base_; }
    [[nodiscard]] Interval interval() const noexcept { return j_; }
    [[nodiscard]] std::string name() const { return "projective"; }
    [[nodiscard]] double param_constant() const noexcept { return c_; }

    [[nodiscard]] ShiftedLift<ProjectiveLift> lift(double a, const BasePoint& w) const {
        const double hmax = c_ > 0.0 ? 0.25 / c_ : j_.length() + 1.0;
        const auto steps = static_cast<std::size_t>(std::ceil((a - j_.lo) / hmax));
        std::vector<double> walk(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i)
            walk[i] = steps == 0 ? a : j_.lo + (a - j_.lo) * static_cast<double>(i) / static_cast<double>(steps);
        const auto offsets = continuity_offsets([&](double s) { return matrix_at_(s, w); }, walk, c_);
        return {projectivize(matrix_at_(a, w)), offsets.back()};
    }

    /// max(2, padded sup over 257 parameter samples of ||A(a, omega)||^2).
    [[nodiscard]] double m_of(const BasePoint& w) const {
        constexpr int kSamples = 256;
        double sup = 0.0;
        for (int i = 0; i <= kSamples; ++i) sup = std::max(sup, matrix_at_(j_.lo + j_.length() * i / kSamples, w).norm_sq());
        return std::max(2.0, sup * sup_padding(kSamples));
    }

private:
    BaseSystem base_;
    Interval j_;
    MatrixFn matrix_at_;
    double c_;
};

// ---------------------------------------------------------------------------
// Integrated density of states
// ---------------------------------------------------------------------------

enum class IdsMethod { eigencount, rotation };

[[nodiscard]] inline std::string ids_method_name(IdsMethod m) {
    return m == IdsMethod::eigencount ? "eigencount" : "rotation";
}

struct IDSCurve {
    std::vector<double> energies;
    std::vector<double> values;
    IdsMethod method = IdsMethod::eigencount;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> error_radius; // rotation route only

    friend bool operator==(const IDSCurve&, const IDSCurve&) = default;
};

/// Number of eigenvalues <= E of the Dirichlet matrix with diagonal V and unit
/// off-diagonals, from the inertia of the LDL^T pivots of T - E.
[[nodiscard]] inline std::int64_t eigen_count_leq(std::span<const double> v, double energy) {
    if (v.empty()) throw PreconditionError("eigen_count_leq: empty potential");
    if (!std::isfinite(energy)) throw EvaluationError("eigen_count_leq: energy is not finite");
    constexpr double kTiny = 1e-300;
    std::int64_t count = 0;
    double q = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k])) throw EvaluationError("eigen_count_leq: V[" + std::to_string(k) + "] is not finite");
        if (k == 0) {
            q = v[0] - energy;
        } else {
            if (std::abs(q) < kTiny) q = q > 0.0 ? kTiny : -kTiny;
            q = v[k] - energy - 1.0 / q;
        }
        if (q <= 0.0) ++count;
    }
    return count;
}

/// N_n(E) = #{eigenvalues of H_{omega,[1,n]} <= E} / n on each grid energy.
[[nodiscard]] inline IDSCurve ids_empirical(const PotentialModel& model, const BasePoint& omega, std::int64_t n,
                                            std::span<const double> energies, int threads = 1) {
    if (n < 100) throw PreconditionError("ids_empirical: n must be at least 100, got " + std::to_string(n));
    const auto v = potential_sequence(model, omega, n, 1);
    IDSCurve curve;
    curve.energies.assign(energies.begin(), energies.end());
    curve.values.resize(energies.size());
    curve.method = IdsMethod::eigencount;
    curve.n = n;
    curve.seed = omega.stream;
    parallel_for(energies.size(), threads, [&](std::size_t i) {
        curve.values[i] = static_cast<double>(eigen_count_leq(v, energies[i])) / static_cast<double>(n);
    });
    return curve;
}

/// Smallest admissible anchor energy for a bounded model: 2 + sup|f| + 1.
[[nodiscard]] inline double min_anchor_energy(const PotentialModel& model) {
    if (!model.bounded()) throw ConfigError("unbounded potential: the anchor energy E_ref must be supplied");
    return 3.0 + *model.sup_bound;
}

/// N(E) = 1 - 2 (rho(E) - rho(E_ref)), anchored so N(E_ref) = 1. Lift-independent
/// because only differences of rotation numbers enter. Values are clamped into [0, 1].
[[nodiscard]] inline IDSCurve ids_from_rotation(std::span<const double> energies, std::span<const RotationEstimate> rho,
                                                const RotationEstimate& anchor) {
    if (energies.size() != rho.size()) throw PreconditionError("ids_from_rotation: energies and rho differ in length");
    IDSCurve curve;
    curve.energies.assign(energies.begin(), energies.end());
    curve.method = IdsMethod::rotation;
    curve.n = anchor.n;
    curve.seed = anchor.omega0.stream;
    curve.values.resize(rho.size());
    curve.error_radius.resize(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        curve.values[i] = std::clamp(1.0 - 2.0 * (rho[i].value - anchor.value), 0.0, 1.0);
        curve.error_radius[i] = 2.0 * (rho[i].error_radius + anchor.error_radius);
    }
    return curve;
}

/// The rotation route end to end. E_ref defaults to 2 + sup|f| + 1 and must be
/// supplied for unbounded models.
[[nodiscard]] inline IDSCurve ids_rotation(const PotentialModel& model, const BasePoint& omega, std::int64_t n,
                                           std::span<const double> energies, std::optional<double> e_ref = {},
                                           int threads = 1) {
    double anchor_energy = 0.0;
    if (e_ref) {
        anchor_energy = *e_ref;
        if (model.bounded() && anchor_energy < min_anchor_energy(model))
            throw PreconditionError("ids_from_rotation: E_ref = " + std::to_string(anchor_energy) +
                                    " is below 2 + sup|f| + 1 = " + std::to_string(min_anchor_energy(model)));
    } else {
        anchor_energy = min_anchor_energy(model);
    }
    double lo = anchor_energy, hi = anchor_energy;
    for (double e : energies) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    const SchrodingerFamily fam(model, {lo, hi});
    std::vector<double> all(energies.begin(), energies.end());
    all.push_back(anchor_energy);
    auto rho = rotation_curve(fam, all, omega, 0.0, n, threads);
    const RotationEstimate anchor = rho.back();
    rho.pop_back();
    return ids_from_rotation(energies, rho, anchor);
}

/// IDS of the free Laplacian: (1/pi) arccos(-E/2) on (-2, 2).
[[nodiscard]] inline double free_laplacian_ids(double energy) noexcept {
    if (energy <= -2.0) return 0.0;
    if (energy >= 2.0) return 1.0;
    return std::acos(-0.5 * energy) / std::numbers::pi;
}

} // namespace rotnum
