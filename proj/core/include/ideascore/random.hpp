#pragma once

#include <array>
#include <cstdint>

namespace ideascore::random {

/// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3"). Output is a pure function of (counter, key),
/// so every draw can be addressed directly and reproduced on any platform.
using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

Counter philox4x32_10(Counter counter, Key key) noexcept;

// Uniform on the open interval (0, 1): 52 random bits at half-step offsets.
double uniform_open01(const Counter& bits) noexcept;

// Standard normal by inverse-CDF transform of a uniform draw.
double standard_normal(double u);

Key key_from_seed(std::uint64_t seed) noexcept;

}  // namespace ideascore::random
