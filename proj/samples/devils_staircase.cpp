// Rotation number of the autonomous circle map x -> x + a + eps sin(2 pi x),
// tabulated on a fine knot set, across a in [0, 1]. Plateaus at rational
// values form the devil's staircase. Prints CSV on stdout.

#include <cmath>
#include <iostream>
#include <numbers>
#include <vector>

#include "rotnum/rotnum.hpp"

int main() {
    using namespace rotnum;
    constexpr int kKnots = 1024;
    constexpr double kEps = 0.15;
    std::vector<double> xs, gs;
    for (int i = 0; i <= kKnots; ++i) {
        const double x = static_cast<double>(i) / kKnots;
        xs.push_back(x);
        gs.push_back(x + kEps * std::sin(2.0 * std::numbers::pi * x));
    }
    gs.back() = 1.0;
    const TabulatedFamily fam(BaseSystem::irrational_rotation(kGoldenAlpha), {0.0, 1.0}, TabulatedLift(xs, gs));

    const auto grid = GridSpec{0.0, 1.0, 0.0025}.points();
    RotationCurve curve;
    curve.params = grid;
    curve.estimates = rotation_curve(fam, grid, fam.base().origin(), 0.0, 20000, default_thread_count());
    write_rotation_csv(std::cout, curve);
}
