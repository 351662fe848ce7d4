#pragma once

#include <numbers>

namespace xduct::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Config files quote every frequency as value/2pi in Hz; the library works in rad/s.
double hz_to_rad(double hz) noexcept;
double rad_to_hz(double rad_per_s) noexcept;

}  // namespace xduct::units
