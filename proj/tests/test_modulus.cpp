#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rotnum/modulus.hpp"
#include "rotnum/random.hpp"

namespace {

using namespace rotnum;

const double kAlpha = std::numbers::sqrt2 - 1.0;

class Gen {
public:
    explicit Gen(std::uint64_t key) : key_(key) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * counter_uniform(key_, i_++); }

private:
    std::uint64_t key_;
    std::int64_t i_ = 0;
};

// x + shift for every parameter, with a declared constant M.
class ConstantFamily {
public:
    explicit ConstantFamily(double m = 2.0) : m_(m) {}
    const BaseSystem& base() const noexcept { return base_; }
    Interval interval() const noexcept { return {0.0, 1.0}; }
    TranslationLift lift(double, const BasePoint&) const noexcept { return {0.3}; }
    double m_of(const BasePoint&) const noexcept { return m_; }
    double param_constant() const noexcept { return 1.0; }
    std::string name() const { return "constant"; }

private:
    BaseSystem base_ = BaseSystem::irrational_rotation(kAlpha);
    double m_;
};

RigidFamily rigid() { return RigidFamily(BaseSystem::irrational_rotation(kAlpha), {0.0, 1.0}); }

SchrodingerFamily free_family(Interval j = {-3.0, 3.0}) { return schrodinger_family(PotentialModel::free(), j); }

std::vector<double> grid_of(double lo, double hi, double step) { return GridSpec{lo, hi, step}.points(); }

std::int64_t j_top(const SegmentCheck& seg) { return seg.records.back().j + 1; }

// ---------------------------------------------------------------------------
// crossing times
// ---------------------------------------------------------------------------

TEST(CrossingTimes, RigidTenth) {
    const auto fam = rigid();
    const auto cr = crossing_times(fam, 0.0, 0.1, fam.base().origin(), 200);
    ASSERT_EQ(cr.records.size(), 21u);
    for (const auto& r : cr.records) EXPECT_EQ(r.n_j, 10 * r.j);
    EXPECT_FALSE(cr.diagnostic);
}

TEST(CrossingTimes, RigidQuarter) {
    const auto fam = rigid();
    const auto cr = crossing_times(fam, 0.0, 0.25, fam.base().origin(), 400);
    ASSERT_EQ(cr.records.size(), 101u);
    for (const auto& r : cr.records) EXPECT_EQ(r.n_j, 4 * r.j);
}

TEST(CrossingTimes, EqualParameters) {
    const auto fam = rigid();
    const auto cr = crossing_times(fam, 0.4, 0.4, fam.base().origin(), 1000);
    ASSERT_EQ(cr.records.size(), 1u);
    EXPECT_EQ(cr.records[0].j, 0);
    EXPECT_EQ(cr.records[0].n_j, 0);
    ASSERT_TRUE(cr.diagnostic);
    EXPECT_NE(cr.diagnostic->find("no full-turn crossing"), std::string::npos);
}

TEST(CrossingTimes, SegmentSumsAndOrder) {
    const auto fam = free_family();
    const auto cr = crossing_times(fam, 0.01, 0.0, fam.base().origin(), 20000);
    ASSERT_GE(cr.records.size(), 3u);
    const double log_m = std::log(fam.m_of(fam.base().origin()));
    for (std::size_t i = 0; i + 1 < cr.records.size(); ++i) {
        EXPECT_LE(cr.records[i].n_j, cr.records[i + 1].n_j);
        ASSERT_TRUE(cr.records[i].segment_log_sum);
        const auto len = static_cast<double>(cr.records[i + 1].n_j - cr.records[i].n_j);
        EXPECT_NEAR(*cr.records[i].segment_log_sum, len * log_m, 1e-9 * (1.0 + len));
    }
    EXPECT_FALSE(cr.records.back().segment_log_sum);
}

TEST(CrossingTimes, ParameterRange) {
    const auto fam = rigid();
    EXPECT_THROW((void)crossing_times(fam, 0.0, 1.1, fam.base().origin(), 10), ParameterRangeError);
}

// ---------------------------------------------------------------------------
// step lemma
// ---------------------------------------------------------------------------

TEST(StepLemma, RigidEquality) {
    const auto fam = rigid();
    // one step, j = 0: the lead equals delta
    const auto chk = verify_step_lemma(fam, 0.0, 0.09, fam.base().origin(), 1, 0, 0);
    EXPECT_TRUE(chk.pass);
    EXPECT_NEAR(chk.worst_margin, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(chk.delta, 0.09);
    EXPECT_EQ(chk.checks, 1);
}

TEST(StepLemma, EqualParameters) {
    const auto fam = free_family();
    const auto chk = verify_step_lemma(fam, 0.7, 0.7, fam.base().origin(), 1000, 0, 3);
    EXPECT_TRUE(chk.pass);
    EXPECT_TRUE(chk.corollary_pass);
    EXPECT_GE(chk.worst_margin, chk.delta);
    EXPECT_FALSE(chk.swapped);
}

TEST(StepLemma, FreeSchrodinger) {
    const auto fam = free_family();
    const auto chk = verify_step_lemma(fam, 0.0, 0.01, fam.base().origin(), 10000, 0, 50);
    EXPECT_TRUE(chk.pass);
    EXPECT_GT(chk.worst_margin, 0.0);
    EXPECT_TRUE(chk.corollary_pass);
    EXPECT_TRUE(chk.swapped);
    EXPECT_EQ(chk.checks, 10000 * 51);
}

TEST(StepLemma, StandingAssumptionGuard) {
    const auto fam = rigid();
    try {
        (void)verify_step_lemma(fam, 0.0, 0.1, fam.base().origin(), 5, 0, 0);
        FAIL() << "expected a precondition error";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("delta < 0.1"), std::string::npos);
    }
    EXPECT_THROW((void)verify_step_lemma(fam, 0.0, 0.25, fam.base().origin(), 5, 0, 0), PreconditionError);
}

// ---------------------------------------------------------------------------
// segment lemma
// ---------------------------------------------------------------------------

TEST(SegmentLemma, RigidArithmetic) {
    const auto fam = rigid();
    const auto seg = verify_segment_lemma(fam, 0.0, 0.05, fam.base().origin(), 400);
    EXPECT_EQ(seg.status, SegmentStatus::pass);
    EXPECT_NEAR(seg.threshold, std::log(10.0), 1e-12);
    EXPECT_EQ(seg.segments, 20u);
    EXPECT_NEAR(seg.worst_margin, 20.0 * std::log(2.0) - std::log(10.0), 1e-9);
    for (const auto& r : seg.records) EXPECT_EQ(r.n_j, 20 * r.j);
}

TEST(SegmentLemma, GuardFires) {
    const auto fam = rigid();
    EXPECT_THROW((void)verify_segment_lemma(fam, 0.0, 0.25, fam.base().origin(), 100), PreconditionError);
}

TEST(SegmentLemma, FreeSchrodingerFine) {
    const auto fam = free_family();
    const auto seg = verify_segment_lemma(fam, 0.0, 0.001, fam.base().origin(), 1000000);
    EXPECT_EQ(seg.status, SegmentStatus::pass);
    EXPECT_GE(seg.segments, 10u);
    EXPECT_GE(seg.worst_margin, -kLemmaSlack);
}

TEST(SegmentLemma, InconclusiveWithoutCrossings) {
    const auto fam = rigid();
    const auto seg = verify_segment_lemma(fam, 0.5, 0.5001, fam.base().origin(), 100);
    EXPECT_EQ(seg.status, SegmentStatus::inconclusive);
    EXPECT_TRUE(seg.diagnostic);
    EXPECT_EQ(segment_status_name(seg.status), "inconclusive");
}

// ---------------------------------------------------------------------------
// R
// ---------------------------------------------------------------------------

TEST(EstimateR, ConstantTwo) {
    EXPECT_NEAR(estimate_R(rigid(), BasePoint{}, 1000), 8.0 * std::log(2.0), 1e-12);
}

TEST(EstimateR, ConstantE) {
    const ConstantFamily fam(std::numbers::e);
    EXPECT_NEAR(estimate_R(fam, fam.base().origin(), 5000), 8.0, 1e-12);
}

TEST(EstimateR, FreeSchrodinger) {
    const auto fam = free_family();
    const double r = estimate_R(fam, fam.base().origin(), 2000);
    EXPECT_NEAR(r, 8.0 * std::log(schrodinger_norm_sq(3.0)), 1e-12);
    EXPECT_EQ(estimate_R(fam, fam.base().sample(4), 2000), r);
    const auto rt = estimate_r_with_tail(fam, fam.base().origin(), 2000);
    EXPECT_NEAR(rt.tail, 0.0, 1e-12);
}

TEST(EstimateR, ShortOrbitRejected) {
    EXPECT_THROW((void)estimate_R(rigid(), BasePoint{}, 999), PreconditionError);
}

TEST(EstimateR, RandomModelHasTail) {
    const auto fam = schrodinger_family(PotentialModel::anderson_bernoulli(1.0, 3), {-3.5, 3.5});
    const auto rt = estimate_r_with_tail(fam, fam.base().origin(), 10000);
    EXPECT_GT(rt.tail, 0.0);
    EXPECT_LT(rt.tail, 0.05 * rt.r);
}

// ---------------------------------------------------------------------------
// certificate
// ---------------------------------------------------------------------------

TEST(Certificate, Rigid) {
    const auto fam = rigid();
    const auto grid = grid_of(0.0, 1.0, 0.005);
    const auto rep = modulus_certificate(fam, grid, fam.base().origin(), 1000);
    EXPECT_EQ(rep.verdict, Verdict::certified);
    EXPECT_LE(rep.observed_sup, 1.0 / std::numbers::e + 1e-9);
    EXPECT_NEAR(rep.r_estimate, 8.0 * std::log(2.0), 1e-12);
    EXPECT_NEAR(rep.threshold, std::exp(-4.0), 1e-15);
    EXPECT_GT(rep.pair_count, 0u);
    EXPECT_LE(rep.pairs.size(), 256u);
    // distant pairs reach the calculus maximum of t log(1/t) at t = 1/e
    EXPECT_NEAR(rep.distant_observed_sup, 1.0 / std::numbers::e, 1e-4);
    for (std::size_t i = 1; i < rep.pairs.size(); ++i) EXPECT_GE(rep.pairs[i - 1].score, rep.pairs[i].score);
    EXPECT_EQ(rep.family, "rigid");
}

TEST(Certificate, ConstantCurve) {
    const ConstantFamily fam;
    const auto grid = grid_of(0.0, 1.0, 0.001);
    const auto rep = modulus_certificate(fam, grid, fam.base().origin(), 500);
    EXPECT_EQ(rep.verdict, Verdict::certified);
    EXPECT_EQ(rep.observed_sup, 0.0);
}

TEST(Certificate, CoarseGridInconclusive) {
    const auto fam = rigid();
    const auto grid = grid_of(0.0, 1.0, 0.1);
    const auto rep = modulus_certificate(fam, grid, fam.base().origin(), 500);
    EXPECT_EQ(rep.verdict, Verdict::inconclusive);
    EXPECT_EQ(rep.pair_count, 0u);
    EXPECT_NE(rep.message.find("refine"), std::string::npos);
}

TEST(Certificate, DetectsViolation) {
    const std::vector<double> grid{0.0, 0.001, 0.002};
    std::vector<RotationEstimate> rho(3);
    rho[1].value = 0.5;
    rho[2].value = 0.5;
    const auto rep = certify_curve(grid, rho, 1.0, {1.0, 0.0});
    EXPECT_EQ(rep.verdict, Verdict::violated);
    EXPECT_LT(rep.worst_margin, 0.0);
    EXPECT_THROW((void)certify_curve(grid, std::vector<RotationEstimate>(2), 1.0, {}), PreconditionError);
}

TEST(Certificate, ErrorBudgetAbsorbsNoise) {
    const std::vector<double> grid{0.0, 0.001};
    std::vector<RotationEstimate> rho(2);
    rho[1].value = 0.1;
    // 0.1 log(1000) = 0.69 against R = 0.5 plus 2 (err + err) log(1000)
    rho[0].error_radius = rho[1].error_radius = 0.002;
    EXPECT_EQ(certify_curve(grid, rho, 1.0, {0.5, 0.0}).verdict, Verdict::violated);
    rho[0].error_radius = rho[1].error_radius = 0.01;
    EXPECT_EQ(certify_curve(grid, rho, 1.0, {0.5, 0.0}).verdict, Verdict::certified);
}

TEST(Certificate, PairLimit) {
    const auto fam = rigid();
    const auto grid = grid_of(0.0, 0.2, 0.001);
    const auto rep = modulus_certificate(fam, grid, fam.base().origin(), 500, 1, CertificateOptions{10});
    EXPECT_EQ(rep.pairs.size(), 10u);
    EXPECT_GT(rep.pair_count, 10u);
    EXPECT_NEAR(rep.pairs.front().score, rep.observed_sup, 1e-15);
}

TEST(Certificate, FreeSchrodinger) {
    const auto fam = free_family({-1.0, 1.0});
    const auto grid = grid_of(-1.0, 1.0, 0.01);
    const auto rep = modulus_certificate(fam, grid, fam.base().origin(), 100000);
    EXPECT_EQ(rep.verdict, Verdict::certified);
    EXPECT_GT(rep.worst_margin, 0.0);
}

TEST(CraigSimon, FreeModel) {
    const auto model = PotentialModel::free();
    const auto grid = grid_of(-1.5, 1.5, 0.01);
    const auto rep = craig_simon_check(model, grid, model.base.origin(), 100000);
    EXPECT_EQ(rep.verdict, Verdict::certified);
    ASSERT_TRUE(rep.ids_constant);
    EXPECT_DOUBLE_EQ(*rep.ids_constant, 2.0 * rep.r_estimate);
    EXPECT_DOUBLE_EQ(*rep.ids_observed_sup, 2.0 * rep.observed_sup);
    // against the closed-form modulus of N on the same grid pairs
    double closed = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size() && grid[j] - grid[i] <= rep.threshold; ++j)
            closed = std::max(closed, std::abs(free_laplacian_ids(grid[j]) - free_laplacian_ids(grid[i])) *
                                          std::log(1.0 / (grid[j] - grid[i])));
    EXPECT_NEAR(*rep.ids_observed_sup, closed, 4.0 * rep.max_error_radius * std::log(1.0 / 0.01) + 1e-9);
}

TEST(CraigSimon, CriticalAlmostMathieu) {
    const auto model = PotentialModel::almost_mathieu(1.0);
    const auto grid = grid_of(-3.0, 3.0, 0.01);
    const auto rep = craig_simon_check(model, grid, model.base.origin(), 50000);
    EXPECT_EQ(rep.verdict, Verdict::certified);
}

TEST(CraigSimon, Preconditions) {
    auto model = PotentialModel::free();
    EXPECT_THROW((void)craig_simon_check(model, std::vector<double>{}, model.base.origin(), 1000), PreconditionError);
    model.log_integrable = false;
    const std::vector<double> grid{0.0, 0.01};
    EXPECT_THROW((void)craig_simon_check(model, grid, model.base.origin(), 1000), PreconditionError);
}

// ---------------------------------------------------------------------------
// properties
// ---------------------------------------------------------------------------

template <class F>
void check_lemmas(const F& fam, double a, double a2, const BasePoint& w, std::int64_t n, const std::string& label) {
    const auto seg = verify_segment_lemma(fam, a, a2, w, n);
    EXPECT_NE(seg.status, SegmentStatus::fail) << label << " a=" << a << " a2=" << a2;
    EXPECT_GE(seg.worst_margin, -kLemmaSlack) << label;
    const auto step = verify_step_lemma(fam, a, a2, w, n, 0, j_top(seg));
    EXPECT_TRUE(step.pass) << label << " a=" << a << " a2=" << a2 << " margin " << step.worst_margin;
    EXPECT_TRUE(step.corollary_pass) << label << " a=" << a << " a2=" << a2;
    EXPECT_EQ(step.swapped, seg.swapped) << label;
}

TEST(Property, LemmasOnCatalogFamilies) {
    Gen g(7);
    const auto rig = RigidFamily(BaseSystem::torus_shift({kAlpha, std::numbers::sqrt3 - 1.0}), {0.0, 1.0});
    const auto sine = SineFamily(BaseSystem::iid_shift(UniformReal{0.0, 1.0}, 3), {0.0, 1.0}, 0.1);
    const auto tab = TabulatedFamily(BaseSystem::irrational_rotation(kAlpha), {0.0, 1.0},
                                     TabulatedLift({0.0, 0.3, 1.0}, {0.0, 0.6, 1.0}));
    for (int t = 0; t < 4; ++t) {
        const double a = g.uniform(0.0, 0.9), h = g.uniform(0.002, 0.05);
        check_lemmas(rig, a, a + h, rig.base().origin(), 4000, "rigid");
        check_lemmas(sine, a, a + h, sine.base().origin(), 4000, "sine");
        check_lemmas(tab, a, a + h, tab.base().origin(), 4000, "tabulated");
    }
    const std::vector<PotentialModel> models{PotentialModel::free(), PotentialModel::anderson_bernoulli(1.0, 11),
                                             PotentialModel::anderson_uniform(2.0, 12),
                                             PotentialModel::almost_mathieu(1.0), PotentialModel::fibonacci(1.5)};
    for (const auto& model : models) {
        const double s = *model.sup_bound;
        const auto fam = schrodinger_family(model, {-2.0 - s, 2.0 + s});
        for (int t = 0; t < 3; ++t) {
            const double e = g.uniform(-1.8 - s, 1.5 + s), h = g.uniform(0.005, 0.15);
            check_lemmas(fam, e, e + h, fam.base().origin(), 20000, fam.name());
        }
    }
}

TEST(Property, CrossingRateBound) {
    for (const auto& model : {PotentialModel::free(), PotentialModel::anderson_bernoulli(1.0, 1)}) {
        const double s = *model.sup_bound;
        const auto fam = schrodinger_family(model, {-2.0 - s, 2.0 + s});
        const BasePoint w = fam.base().origin();
        const double r = estimate_R(fam, w, 100000);
        for (double h : {0.01, 0.05, 0.15}) {
            const auto seg = verify_segment_lemma(fam, -0.3, -0.3 + h, w, 100000);
            ASSERT_GE(seg.records.size(), 2u);
            const auto& last = seg.records.back();
            const double rate = static_cast<double>(last.j) / static_cast<double>(last.n_j);
            EXPECT_LE(rate * seg.threshold, 0.25 * r * 1.5) << fam.name() << " h=" << h;
        }
    }
}

TEST(Property, ClosedFormDifferencesAndStableVerdicts) {
    const auto fam = free_family({-1.9, 1.9});
    const auto grid = grid_of(-1.9, 1.9, 0.02);
    const BasePoint w = fam.base().origin();
    const auto rho = rotation_curve(fam, grid, w, 0.0, 100000);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double exact = (std::acos(grid[i] / 2) - std::acos(grid[i - 1] / 2)) / (2 * std::numbers::pi);
        EXPECT_NEAR(rho[i].value - rho[i - 1].value, exact, 2.0 * (rho[i].error_radius + rho[i - 1].error_radius));
    }
    const auto r1 = modulus_certificate(fam, grid, w, 50000);
    const auto r2 = modulus_certificate(fam, grid, w, 100000);
    EXPECT_EQ(r1.verdict, Verdict::certified);
    EXPECT_EQ(r1.verdict, r2.verdict);
    const auto rig = rigid();
    const auto rgrid = grid_of(0.0, 1.0, 0.004);
    EXPECT_EQ(modulus_certificate(rig, rgrid, rig.base().origin(), 1000).verdict,
              modulus_certificate(rig, rgrid, rig.base().origin(), 2000).verdict);
}

TEST(Property, ThreadsDoNotChangeReport) {
    const auto fam = schrodinger_family(PotentialModel::anderson_bernoulli(1.0, 2), {-3.0, 3.0});
    const auto grid = grid_of(-3.0, 3.0, 0.05);
    const auto a = modulus_certificate(fam, grid, fam.base().origin(), 20000, 1);
    const auto b = modulus_certificate(fam, grid, fam.base().origin(), 20000, 3);
    EXPECT_EQ(a.observed_sup, b.observed_sup);
    EXPECT_EQ(a.worst_margin, b.worst_margin);
    EXPECT_EQ(a.verdict, b.verdict);
}

} // namespace
