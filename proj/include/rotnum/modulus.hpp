#pragma once

// Executable form of the log-Holder argument for rotation numbers: the
// one-step comparison of two fiber orbits, crossing times, the per-segment
// log-sum bound, the constant R = 8 * integral of log M, and the certificate
//   |rho(a') - rho(a)| <= R / log(1/|a' - a|)   for |a' - a| <= min(1/2, e^{-4C}).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotnum/circlemap.hpp"
#include "rotnum/schrodinger.hpp"

namespace rotnum {

/// Slack allowed in every lemma inequality and in crossing detection.
inline constexpr double kLemmaSlack = 1e-9;

struct CrossingRecord {
    std::int64_t j = 0;
    std::int64_t n_j = 0;
    std::optional<double> segment_log_sum; // sum of log M over (n_j, n_{j+1}]; absent for the last record
};

struct CrossingResult {
    std::vector<CrossingRecord> records;
    std::optional<std::string> diagnostic;
};

struct LemmaCheck {
    bool pass = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::int64_t worst_n = 0;
    std::int64_t worst_j = 0;
    bool corollary_pass = true;
    double corollary_worst_margin = std::numeric_limits<double>::infinity();
    std::int64_t checks = 0;
    double delta = 0.0;
    bool swapped = false;
};

enum class SegmentStatus { pass, fail, inconclusive };

struct SegmentCheck {
    SegmentStatus status = SegmentStatus::inconclusive;
    double worst_margin = std::numeric_limits<double>::infinity();
    double threshold = 0.0; // log(1 / (2 delta))
    std::size_t segments = 0;
    double delta = 0.0;
    bool swapped = false;
    std::vector<CrossingRecord> records;
    std::optional<std::string> diagnostic;
};

[[nodiscard]] inline std::string segment_status_name(SegmentStatus s) {
    switch (s) {
        case SegmentStatus::pass: return "pass";
        case SegmentStatus::fail: return "fail";
        case SegmentStatus::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

enum class Verdict { certified, violated, inconclusive };

[[nodiscard]] inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct ModulusPair {
    double a = 0.0;
    double a2 = 0.0;
    double drho = 0.0;  // |rho(a') - rho(a)|
    double score = 0.0; // |drho| * log(1 / |a' - a|)
    double allowance = 0.0;
};

struct ModulusReport {
    std::vector<ModulusPair> pairs; // the highest-scoring certified pairs
    std::size_t pair_count = 0;
    double observed_sup = 0.0;
    double r_estimate = 0.0;
    double r_tail = 0.0;
    double c = 0.0;
    double threshold = 0.0; // min(1/2, e^{-4C})
    double worst_margin = std::numeric_limits<double>::infinity();
    double max_error_radius = 0.0;
    std::size_t distant_pair_count = 0;
    double distant_observed_sup = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::string message;
    std::string family;
    std::int64_t n = 0;
    std::vector<double> grid;
    BasePoint omega0;
    // IDS restatement (Schrodinger families only): N = 1 - 2 rho
    std::optional<double> ids_constant;
    std::optional<double> ids_observed_sup;
};

namespace detail {

template <CocycleFamily F>
void check_standing_assumption(const F& fam, double a, double a2, double& delta) {
    const double c = fam.param_constant();
    delta = c * std::abs(a2 - a);
    if (!(delta < 0.1) || !(std::abs(a2 - a) < c))
        throw PreconditionError("pair (" + std::to_string(a) + ", " + std::to_string(a2) +
                                ") violates the standing assumption delta < 0.1 and |a' - a| < C (delta = C |a' - a| = " +
                                std::to_string(delta) + ", C = " + std::to_string(c) + ")");
}

/// Orders the pair so the primed orbit advances: swaps when rho(a') < rho(a).
template <CocycleFamily F>
bool oriented_swap(const F& fam, double a, double a2, const BasePoint& omega0, std::int64_t n) {
    if (a == a2) return false;
    return rotation_difference(fam, a, a2, omega0, std::max<std::int64_t>(n, 1)) < 0.0;
}

} // namespace detail

/// n_j = min{n >= 0 : x'_n >= x_n + j} for every j with n_j <= n_max; both
/// orbits start at 0 over omega0.
template <CocycleFamily F>
[[nodiscard]] CrossingResult crossing_times(const F& fam, double a, double a2, const BasePoint& omega0,
                                            std::int64_t n_max) {
    check_parameter(fam, a);
    check_parameter(fam, a2);
    fam.base().validate(omega0);
    const BaseSystem& sys = fam.base();
    CrossingResult out;
    std::vector<double> prefix_at; // log-M prefix sum at each recorded n_j
    out.records.push_back({0, 0, std::nullopt});
    prefix_at.push_back(0.0);
    LiftPoint x, xp;
    BasePoint w = omega0;
    double prefix = 0.0;
    std::int64_t next_j = 1;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        prefix += std::log(fam.m_of(w));
        x = apply_lift(fam.lift(a, w), x);
        xp = apply_lift(fam.lift(a2, w), xp);
        w = sys.step(w);
        const double lead = lift_distance(xp, x);
        while (lead >= static_cast<double>(next_j) - kLemmaSlack) {
            out.records.push_back({next_j, n, std::nullopt});
            prefix_at.push_back(prefix);
            ++next_j;
        }
    }
    for (std::size_t i = 0; i + 1 < out.records.size(); ++i)
        out.records[i].segment_log_sum = prefix_at[i + 1] - prefix_at[i];
    if (out.records.size() < 2)
        out.diagnostic = "no full-turn crossing within N_max = " + std::to_string(n_max) +
                         "; consistent with rho(a') = rho(a)";
    return out;
}

/// Checks x'_n - x_n - j <= delta + M_{sigma^{n-1} omega} max(0, x'_{n-1} - x_{n-1} - j)
/// and d_{n,j} <= M d_{n-1,j} for n = 1..N and j in [j_lo, j_hi].
template <CocycleFamily F>
[[nodiscard]] LemmaCheck verify_step_lemma(const F& fam, double a, double a2, const BasePoint& omega0, std::int64_t n,
                                           std::int64_t j_lo, std::int64_t j_hi) {
    check_parameter(fam, a);
    check_parameter(fam, a2);
    LemmaCheck out;
    detail::check_standing_assumption(fam, a, a2, out.delta);
    if (detail::oriented_swap(fam, a, a2, omega0, n)) {
        std::swap(a, a2);
        out.swapped = true;
    }
    const BaseSystem& sys = fam.base();
    LiftPoint x, xp;
    BasePoint w = omega0;
    for (std::int64_t step = 1; step <= n; ++step) {
        const double m = fam.m_of(w);
        const double prev_lead = lift_distance(xp, x);
        x = apply_lift(fam.lift(a, w), x);
        xp = apply_lift(fam.lift(a2, w), xp);
        w = sys.step(w);
        const double lead = lift_distance(xp, x);
        for (std::int64_t j = j_lo; j <= j_hi; ++j) {
            const double jj = static_cast<double>(j);
            const double prev = std::max(0.0, prev_lead - jj);
            const double margin = out.delta + m * prev - (lead - jj);
            if (margin < out.worst_margin) {
                out.worst_margin = margin;
                out.worst_n = step;
                out.worst_j = j;
            }
            const double d_now = out.delta + std::max(0.0, lead - jj);
            const double d_prev = out.delta + prev;
            out.corollary_worst_margin = std::min(out.corollary_worst_margin, m * d_prev - d_now);
            ++out.checks;
        }
    }
    out.pass = out.worst_margin >= -kLemmaSlack;
    out.corollary_pass = out.corollary_worst_margin >= -kLemmaSlack;
    return out;
}

/// Checks log(1/(2 delta)) <= sum over (n_j, n_{j+1}] of log M for every
/// consecutive pair of crossings found within n_max steps.
template <CocycleFamily F>
[[nodiscard]] SegmentCheck verify_segment_lemma(const F& fam, double a, double a2, const BasePoint& omega0,
                                                std::int64_t n_max) {
    check_parameter(fam, a);
    check_parameter(fam, a2);
    SegmentCheck out;
    detail::check_standing_assumption(fam, a, a2, out.delta);
    if (detail::oriented_swap(fam, a, a2, omega0, n_max)) {
        std::swap(a, a2);
        out.swapped = true;
    }
    out.threshold = std::log(1.0 / (2.0 * out.delta));
    CrossingResult cr = crossing_times(fam, a, a2, omega0, n_max);
    out.records = std::move(cr.records);
    out.diagnostic = std::move(cr.diagnostic);
    for (const auto& r : out.records) {
        if (!r.segment_log_sum) continue;
        ++out.segments;
        out.worst_margin = std::min(out.worst_margin, *r.segment_log_sum - out.threshold);
    }
    if (out.records.size() < 2) {
        out.status = SegmentStatus::inconclusive;
        if (!out.diagnostic) out.diagnostic = "fewer than two crossings";
    } else {
        out.status = out.worst_margin >= -kLemmaSlack ? SegmentStatus::pass : SegmentStatus::fail;
    }
    return out;
}

struct REstimate {
    double r = 0.0;
    double tail = 0.0; // 8 |A_n - A_{2n}|
};

/// R = 8 * Birkhoff average of log M over n steps, with the tail allowance
/// from comparing against 2n steps.
template <CocycleFamily F>
[[nodiscard]] REstimate estimate_r_with_tail(const F& fam, const BasePoint& omega0, std::int64_t n) {
    if (n < 1000) throw PreconditionError("estimate_R: n must be at least 1000, got " + std::to_string(n));
    const auto log_m = [&](const BasePoint& w) { return std::log(fam.m_of(w)); };
    const double an = birkhoff_average(fam.base(), log_m, omega0, n);
    const double a2n = birkhoff_average(fam.base(), log_m, omega0, 2 * n);
    return {8.0 * an, 8.0 * std::abs(an - a2n)};
}

template <CocycleFamily F>
[[nodiscard]] double estimate_R(const F& fam, const BasePoint& omega0, std::int64_t n) {
    if (n < 1000) throw PreconditionError("estimate_R: n must be at least 1000, got " + std::to_string(n));
    return 8.0 * birkhoff_average(fam.base(), [&](const BasePoint& w) { return std::log(fam.m_of(w)); }, omega0, n);
}

struct CertificateOptions {
    std::size_t max_pairs_recorded = 256;
};

/// Evaluates the log-Holder inequality on all grid pairs with
/// |a' - a| <= min(1/2, e^{-4C}), each against
///   R + tail_R + 2 (err(a) + err(a')) log(1/|a' - a|).
/// Pairs with larger separation (up to 1/2) are reported, not certified.
[[nodiscard]] inline ModulusReport certify_curve(std::span<const double> grid, std::span<const RotationEstimate> rho,
                                                 double c, REstimate r, CertificateOptions opts = {}) {
    if (grid.size() != rho.size()) throw PreconditionError("certify_curve: grid and rho differ in length");
    ModulusReport rep;
    rep.c = c;
    rep.r_estimate = r.r;
    rep.r_tail = r.tail;
    rep.threshold = std::min(0.5, std::exp(-4.0 * c));
    rep.grid.assign(grid.begin(), grid.end());
    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t rr) { return grid[l] < grid[rr]; });
    for (const auto& e : rho) rep.max_error_radius = std::max(rep.max_error_radius, e.error_radius);

    const auto by_score = [](const ModulusPair& l, const ModulusPair& rr) { return l.score > rr.score; };
    std::priority_queue<ModulusPair, std::vector<ModulusPair>, decltype(by_score)> top(by_score);
    bool violated = false;
    for (std::size_t ii = 0; ii < order.size(); ++ii) {
        const std::size_t i = order[ii];
        for (std::size_t jj = ii + 1; jj < order.size(); ++jj) {
            const std::size_t j = order[jj];
            const double da = grid[j] - grid[i];
            if (da > 0.5) break;
            if (!(da > 0.0)) continue;
            const double log_inv = std::log(1.0 / da);
            ModulusPair p{grid[i], grid[j], std::abs(rho[j].value - rho[i].value), 0.0, 0.0};
            p.score = p.drho * log_inv;
            if (da > rep.threshold) {
                ++rep.distant_pair_count;
                rep.distant_observed_sup = std::max(rep.distant_observed_sup, p.score);
                continue;
            }
            p.allowance = r.r + r.tail + 2.0 * (rho[i].error_radius + rho[j].error_radius) * log_inv;
            ++rep.pair_count;
            rep.observed_sup = std::max(rep.observed_sup, p.score);
            rep.worst_margin = std::min(rep.worst_margin, p.allowance - p.score);
            if (p.score > p.allowance) violated = true;
            if (top.size() < opts.max_pairs_recorded) {
                top.push(p);
            } else if (!top.empty() && p.score > top.top().score) {
                top.pop();
                top.push(p);
            }
        }
    }
    while (!top.empty()) {
        rep.pairs.push_back(top.top());
        top.pop();
    }
    std::reverse(rep.pairs.begin(), rep.pairs.end());
    if (rep.pair_count == 0) {
        rep.verdict = Verdict::inconclusive;
        rep.message = "no grid pair is closer than min(1/2, e^{-4C}) = " + std::to_string(rep.threshold) +
                      "; refine the grid step below this separation";
    } else if (violated) {
        rep.verdict = Verdict::violated;
        rep.message = "observed modulus exceeds R plus the error budget";
    } else {
        rep.verdict = Verdict::certified;
        rep.message = "all close pairs satisfy the log-Holder bound within the error budget";
    }
    return rep;
}

template <CocycleFamily F>
[[nodiscard]] ModulusReport modulus_certificate(const F& fam, std::span<const double> grid, const BasePoint& omega0,
                                                std::int64_t n, int threads = 1, CertificateOptions opts = {}) {
    for (double a : grid) check_parameter(fam, a);
    const auto rho = rotation_curve(fam, grid, omega0, 0.0, n, threads);
    const REstimate r = estimate_r_with_tail(fam, omega0, std::max<std::int64_t>(n, 1000));
    ModulusReport rep = certify_curve(grid, rho, fam.param_constant(), r, opts);
    rep.family = fam.name();
    rep.n = n;
    rep.omega0 = omega0;
    return rep;
}

/// The certificate on the Schrodinger family over the grid's energy range,
/// restated for N = 1 - 2 rho (constants doubled).
[[nodiscard]] inline ModulusReport craig_simon_check(const PotentialModel& model, std::span<const double> energies,
                                                     const BasePoint& omega0, std::int64_t n, int threads = 1,
                                                     CertificateOptions opts = {}) {
    if (!model.log_integrable)
        throw PreconditionError("craig_simon_check: the model must assert integrability of log(1 + |f|)");
    if (energies.empty()) throw PreconditionError("craig_simon_check: empty energy grid");
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    const SchrodingerFamily fam(model, {*lo, *hi});
    ModulusReport rep = modulus_certificate(fam, energies, omega0, n, threads, opts);
    rep.ids_constant = 2.0 * rep.r_estimate;
    rep.ids_observed_sup = 2.0 * rep.observed_sup;
    return rep;
}

} // namespace rotnum
