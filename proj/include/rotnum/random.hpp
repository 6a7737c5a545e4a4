#pragma once

// Counter-based random numbers: Philox2x64-10 keyed by a 64-bit seed. A draw
// is a pure function of (key, counter), so any element of a stream can be
// produced in O(1) and streams never share state.

#include <array>
#include <cstdint>

namespace rotnum {

class Philox2x64 {
public:
    using Counter = std::array<std::uint64_t, 2>;

    explicit constexpr Philox2x64(std::uint64_t key) noexcept : key_(key) {}

    [[nodiscard]] constexpr Counter operator()(Counter ctr) const noexcept {
        std::uint64_t key = key_;
        ctr = round(ctr, key);
        for (int r = 1; r < 10; ++r) {
            key += kWeyl;
            ctr = round(ctr, key);
        }
        return ctr;
    }

    [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }

private:
    static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
    static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

    __extension__ using Wide = unsigned __int128;

    static constexpr Counter round(Counter ctr, std::uint64_t key) noexcept {
        const Wide product = static_cast<Wide>(kMultiplier) * ctr[0];
        const auto hi = static_cast<std::uint64_t>(product >> 64);
        const auto lo = static_cast<std::uint64_t>(product);
        return {hi ^ key ^ ctr[1], lo};
    }

    std::uint64_t key_;
};

/// 64 random bits at position `index` of the stream keyed by `key`.
[[nodiscard]] constexpr std::uint64_t counter_bits(std::uint64_t key, std::int64_t index,
                                                   std::uint64_t lane = 0) noexcept {
    return Philox2x64(key)({static_cast<std::uint64_t>(index), lane})[0];
}

/// Uniform double in [0, 1) with 53 random bits.
[[nodiscard]] constexpr double counter_uniform(std::uint64_t key, std::int64_t index,
                                               std::uint64_t lane = 0) noexcept {
    return static_cast<double>(counter_bits(key, index, lane) >> 11) * 0x1.0p-53;
}

/// Derives an independent stream key from a parent key and a task id.
[[nodiscard]] constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t task) noexcept {
    return Philox2x64(parent)({task, 0x5EED5EED5EED5EEDULL})[1];
}

} // namespace rotnum
