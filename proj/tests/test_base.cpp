#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rotnum/base.hpp"
#include "rotnum/grid.hpp"
#include "rotnum/log.hpp"
#include "rotnum/parallel.hpp"
#include "rotnum/random.hpp"

namespace {

using namespace rotnum;

const double kSqrt2m1 = std::numbers::sqrt2 - 1.0;

class Gen {
public:
    explicit Gen(std::uint64_t key) : key_(key) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * counter_uniform(key_, i_++); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(counter_bits(key_, i_++) % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t key_;
    std::int64_t i_ = 0;
};

struct CapturedLog {
    std::vector<std::string> lines;
    CapturedLog() {
        log_sink() = [this](LogLevel, std::string_view m) { lines.emplace_back(m); };
    }
    ~CapturedLog() { log_sink() = nullptr; }
};

TEST(Philox, KnownAnswers) {
    const auto zero = Philox2x64(0)({0, 0});
    EXPECT_EQ(zero[0], 0xca00a0459843d731ULL);
    EXPECT_EQ(zero[1], 0x66c24222c9a845b5ULL);
    const auto ones = Philox2x64(~0ULL)({~0ULL, ~0ULL});
    EXPECT_EQ(ones[0], 0x65b021d60cd8310fULL);
    EXPECT_EQ(ones[1], 0x4d02f3222f86df20ULL);
}

TEST(Philox, UniformsInUnitInterval) {
    for (std::int64_t i = 0; i < 10000; ++i) {
        const double u = counter_uniform(123, i);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    EXPECT_NE(counter_bits(1, 0), counter_bits(2, 0));
    EXPECT_NE(counter_bits(1, 0, 0), counter_bits(1, 0, 1));
    EXPECT_NE(derive_key(5, 0), derive_key(5, 1));
}

TEST(Orbit, IrrationalRotationExample) {
    const auto sys = BaseSystem::irrational_rotation(kSqrt2m1);
    const auto o = orbit(sys, sys.point(0.0), 3);
    ASSERT_EQ(o.size(), 3u);
    EXPECT_EQ(o[0].theta[0], 0.0);
    EXPECT_NEAR(o[1].theta[0], kSqrt2m1, 1e-15);
    EXPECT_NEAR(o[2].theta[0], std::fmod(2.0 * kSqrt2m1, 1.0), 1e-15);
}

TEST(Orbit, DoublingExample) {
    const auto sys = BaseSystem::doubling_map();
    const auto o = orbit(sys, sys.point(0.25), 3);
    EXPECT_EQ(o[0].theta[0], 0.25);
    EXPECT_EQ(o[1].theta[0], 0.5);
    EXPECT_EQ(o[2].theta[0], 0.0);
}

TEST(Orbit, DoublingLongOrbitWarns) {
    CapturedLog log;
    const auto sys = BaseSystem::doubling_map();
    const auto o = orbit(sys, sys.point(0.3), 60);
    EXPECT_EQ(o.back().theta[0], 0.0);
    ASSERT_FALSE(log.lines.empty());
    EXPECT_NE(log.lines[0].find("collapse"), std::string::npos);
}

TEST(Orbit, IidDeterministic) {
    const auto sys = BaseSystem::iid_shift(Bernoulli{0.5}, 42);
    const auto a = orbit(sys, sys.origin(), 1000);
    const auto b = orbit(sys, sys.origin(), 1000);
    ASSERT_EQ(a, b);
    std::vector<double> sa, sb;
    const auto sys2 = BaseSystem::iid_shift(Bernoulli{0.5}, 42);
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa.push_back(sys.symbol(a[i]));
        sb.push_back(sys2.symbol(b[i]));
    }
    EXPECT_EQ(sa, sb);
    const auto other = BaseSystem::iid_shift(Bernoulli{0.5}, 43);
    int differ = 0;
    for (std::size_t i = 0; i < a.size(); ++i) differ += other.symbol(other.advance(other.origin(), static_cast<std::int64_t>(i))) != sa[i];
    EXPECT_GT(differ, 300);
}

TEST(Orbit, InvalidStateIsDomainError) {
    const auto sys = BaseSystem::irrational_rotation(kSqrt2m1);
    EXPECT_THROW((void)orbit(sys, sys.point(1.0), 3), DomainError);
    EXPECT_THROW((void)orbit(sys, sys.point(-0.1), 3), DomainError);
    EXPECT_THROW((void)orbit(sys, sys.point(0.1), 0), DomainError);
    BasePoint nan_point;
    nan_point.theta[0] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW((void)orbit(sys, nan_point, 3), DomainError);
}

TEST(BaseSystem, ConstructionErrors) {
    EXPECT_THROW((void)BaseSystem::irrational_rotation(0.0), DomainError);
    EXPECT_THROW((void)BaseSystem::irrational_rotation(1.0), DomainError);
    EXPECT_THROW((void)BaseSystem::torus_shift({}), DomainError);
    EXPECT_THROW((void)BaseSystem::torus_shift({0.1, 0.2, 0.3, 0.4, 0.5}), DomainError);
    EXPECT_THROW((void)BaseSystem::torus_shift({0.1, 1.5}), DomainError);
    EXPECT_THROW((void)BaseSystem::iid_shift(Bernoulli{1.5}, 1), DomainError);
    EXPECT_THROW((void)BaseSystem::iid_shift(UniformReal{1.0, 1.0}, 1), DomainError);
}

TEST(BaseSystem, RationalityWarning) {
    CapturedLog log;
    const auto rational = BaseSystem::irrational_rotation(0.25);
    ASSERT_TRUE(rational.rationality_warning().has_value());
    EXPECT_NE(rational.rationality_warning()->find("1/4"), std::string::npos);
    const auto near = BaseSystem::irrational_rotation(3.0 / 997.0 + 1e-14);
    EXPECT_TRUE(near.rationality_warning().has_value());
    const auto golden = BaseSystem::irrational_rotation(kGoldenAlpha);
    EXPECT_FALSE(golden.rationality_warning().has_value());
    EXPECT_EQ(log.lines.size(), 2u);
}

TEST(BaseSystem, KindNamesAndFibonacciCoding) {
    EXPECT_EQ(BaseSystem::doubling_map().kind_name(), "doubling-map");
    const auto fib = BaseSystem::fibonacci_subshift();
    EXPECT_EQ(fib.kind_name(), "substitution-subshift");
    EXPECT_EQ(fib.rule(), "fibonacci");
    // chi_[1 - alpha, 1)(n alpha mod 1) is the Sturmian Fibonacci word
    std::string word;
    BasePoint p = fib.origin();
    for (int i = 0; i < 13; ++i) {
        word += fib.symbol(p) > 0.5 ? '1' : '0';
        p = fib.step(p);
    }
    int ones = 0;
    for (char c : word) ones += c == '1';
    EXPECT_EQ(word.find("00"), std::string::npos);
    EXPECT_EQ(ones, 8);
}

TEST(BaseSystem, TorusShiftStepsEveryCoordinate) {
    const auto t = BaseSystem::torus_shift({kSqrt2m1, kGoldenAlpha});
    EXPECT_EQ(t.dimension(), 2);
    const BasePoint p = t.step(t.origin());
    EXPECT_NEAR(p.theta[0], kSqrt2m1, 1e-15);
    EXPECT_NEAR(p.theta[1], kGoldenAlpha, 1e-15);
    EXPECT_EQ(p.theta[2], 0.0);
}

TEST(BaseSystem, SampleIsValidAndSeeded) {
    const auto rot = BaseSystem::irrational_rotation(kSqrt2m1);
    const BasePoint a = rot.sample(1), b = rot.sample(1), c = rot.sample(2);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_NO_THROW(rot.validate(a));
    const auto iid = BaseSystem::iid_shift(Bernoulli{0.5}, 9);
    EXPECT_NE(iid.sample(1).stream, iid.origin().stream);
    EXPECT_EQ(iid.origin().stream, 9u);
}

TEST(Birkhoff, ConstantObservable) {
    Gen g(11);
    for (int trial = 0; trial < 20; ++trial) {
        const double c = g.uniform(-5.0, 5.0);
        const auto n = g.integer(1, 500);
        const auto sys = BaseSystem::irrational_rotation(kSqrt2m1);
        EXPECT_NEAR(birkhoff_average(sys, [c](const BasePoint&) { return c; }, sys.origin(), n), c, 1e-14);
    }
}

TEST(Birkhoff, SineOverIrrationalRotation) {
    const auto sys = BaseSystem::irrational_rotation(kSqrt2m1);
    const auto phi = [](const BasePoint& p) { return std::sin(2.0 * std::numbers::pi * p.theta[0]); };
    // oracle: integral of sin(2 pi t) over [0, 1] by the midpoint rule
    double quad = 0.0;
    for (int k = 0; k < 100000; ++k) quad += std::sin(2.0 * std::numbers::pi * (k + 0.5) / 100000.0);
    quad /= 100000.0;
    EXPECT_NEAR(birkhoff_average(sys, phi, sys.origin(), 1000000), quad, 1e-3);
}

TEST(Birkhoff, BernoulliLawOfLargeNumbers) {
    const auto sys = BaseSystem::iid_shift(Bernoulli{0.5}, 2024);
    const auto sym = [&](const BasePoint& p) { return sys.symbol(p); };
    EXPECT_NEAR(birkhoff_average(sys, sym, sys.origin(), 1000000), 0.5, 5e-3);
    const auto uni = BaseSystem::iid_shift(UniformReal{-1.0, 3.0}, 5);
    EXPECT_NEAR(birkhoff_average(uni, [&](const BasePoint& p) { return uni.symbol(p); }, uni.origin(), 1000000), 1.0,
                1e-2);
}

TEST(Birkhoff, NonFiniteNamesIndex) {
    const auto sys = BaseSystem::iid_shift(Bernoulli{0.5}, 1);
    const auto phi = [](const BasePoint& p) { return p.index == 17 ? std::numeric_limits<double>::infinity() : 1.0; };
    try {
        (void)birkhoff_average(sys, phi, sys.origin(), 100);
        FAIL() << "expected EvaluationError";
    } catch (const EvaluationError& e) {
        EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
    }
    EXPECT_THROW((void)birkhoff_average(sys, phi, sys.origin(), 0), DomainError);
}

TEST(Birkhoff, ObservableWrapper) {
    const auto sys = BaseSystem::irrational_rotation(kSqrt2m1);
    const Observable f{[](const BasePoint& p) { return p.theta[0]; }, Integrability::bounded};
    EXPECT_NEAR(birkhoff_average(sys, f, sys.origin(), 200000), 0.5, 1e-3);
}

// Property: orbit(n + m) = orbit(n) ++ orbit(sigma^n omega0, m)
TEST(Property, SemigroupOrbits) {
    Gen g(77);
    const std::vector<BaseSystem> systems = {BaseSystem::irrational_rotation(kSqrt2m1),
                                             BaseSystem::torus_shift({kSqrt2m1, kGoldenAlpha, 0.1234567}),
                                             BaseSystem::doubling_map(), BaseSystem::iid_shift(Bernoulli{0.3}, 99),
                                             BaseSystem::iid_shift(UniformReal{0.0, 2.0}, 100),
                                             BaseSystem::fibonacci_subshift()};
    for (int trial = 0; trial < 60; ++trial) {
        const BaseSystem& sys = systems[static_cast<std::size_t>(trial) % systems.size()];
        const auto n = g.integer(1, 40), m = g.integer(1, 40);
        const BasePoint w = sys.sample(static_cast<std::uint64_t>(trial));
        const auto whole = orbit(sys, w, n + m);
        const auto head = orbit(sys, w, n);
        const auto tail = orbit(sys, sys.advance(w, n), m);
        for (std::int64_t k = 0; k < n; ++k) ASSERT_EQ(whole[static_cast<std::size_t>(k)], head[static_cast<std::size_t>(k)]);
        for (std::int64_t k = 0; k < m; ++k) {
            const auto& x = whole[static_cast<std::size_t>(n + k)];
            const auto& y = tail[static_cast<std::size_t>(k)];
            ASSERT_EQ(x.index, y.index);
            ASSERT_EQ(x.stream, y.stream);
            for (int i = 0; i < kMaxTorusDim; ++i)
                ASSERT_LE(std::abs(x.theta[static_cast<std::size_t>(i)] - y.theta[static_cast<std::size_t>(i)]),
                          std::numeric_limits<double>::epsilon());
            ASSERT_EQ(sys.symbol(x), sys.symbol(y));
        }
    }
}

// Property: |A_n - A_2n| <= 2 sup|phi| and the gap shrinks with n for the test observables
TEST(Property, BirkhoffCauchy) {
    const auto sys = BaseSystem::irrational_rotation(kSqrt2m1);
    const auto phi = [](const BasePoint& p) { return std::cos(2.0 * std::numbers::pi * p.theta[0]) + 0.5; };
    double prev = INFINITY;
    for (std::int64_t n : {1000, 10000, 100000}) {
        const double gap = std::abs(birkhoff_average(sys, phi, sys.origin(), n) -
                                    birkhoff_average(sys, phi, sys.origin(), 2 * n));
        EXPECT_LE(gap, 2.0 * 1.5);
        EXPECT_LT(gap, prev * 1.01);
        prev = gap;
    }
    EXPECT_LT(prev, 1e-3);
}

// Property: step keeps every angle coordinate in [0, 1)
TEST(Property, StepStaysInUnitInterval) {
    Gen g(5);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = g.uniform(1e-6, 1.0 - 1e-6);
        const auto sys = BaseSystem::irrational_rotation(alpha);
        BasePoint p = sys.point(g.uniform(0.0, 1.0));
        for (int k = 0; k < 100; ++k) {
            p = sys.step(p);
            ASSERT_GE(p.theta[0], 0.0);
            ASSERT_LT(p.theta[0], 1.0);
        }
    }
}

TEST(Grid, Parsing) {
    const auto pts = GridSpec{-2.0, 2.0, 0.5}.points();
    ASSERT_EQ(pts.size(), 9u);
    EXPECT_EQ(pts.front(), -2.0);
    EXPECT_EQ(pts.back(), 2.0);
    EXPECT_EQ(GridSpec({0.0, 1.0, 0.3}).points().size(), 4u);
    EXPECT_EQ(GridSpec({0.0, 1.0, 0.01}).points().size(), 101u);
    EXPECT_EQ(GridSpec({0.0, 1.0, 0.01}).points().back(), 1.0);
    EXPECT_EQ(GridSpec({1.0, 1.0, 0.5}).points().size(), 1u);
    EXPECT_THROW((void)GridSpec({0.0, 1.0, 0.0}).points(), ConfigError);
    EXPECT_THROW((void)GridSpec({1.0, 0.0, 0.1}).points(), ConfigError);
}

TEST(Parallel, CoversAllIndicesAndRethrows) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) ASSERT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw DomainError("boom");
                 }),
                 DomainError);
    EXPECT_GE(default_thread_count(), 1);
}

TEST(Log, ParseLevels) {
    EXPECT_EQ(parse_log_level("debug"), LogLevel::debug);
    EXPECT_EQ(parse_log_level("off"), LogLevel::off);
    EXPECT_EQ(parse_log_level("error"), LogLevel::error);
    EXPECT_EQ(parse_log_level("nonsense"), LogLevel::warn);
}

} // namespace
