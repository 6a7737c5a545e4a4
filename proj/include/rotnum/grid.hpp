#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rotnum/error.hpp"

namespace rotnum {

/// Uniform grid min:max:step. Always contains min; contains max when
/// (max - min) / step is an integer to within 1e-9.
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    [[nodiscard]] std::vector<double> points() const {
        if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("grid step must be positive, got " + std::to_string(step));
        if (!(max >= min)) throw ConfigError("grid max must not be below grid min");
        const double ratio = (max - min) / step;
        const double nearest = std::round(ratio);
        const bool integral = std::abs(ratio - nearest) <= 1e-9;
        const auto count = static_cast<long long>(integral ? nearest : std::floor(ratio));
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(count + 1));
        for (long long k = 0; k <= count; ++k) out.push_back(min + static_cast<double>(k) * step);
        if (integral) out.back() = max;
        return out;
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

} // namespace rotnum
