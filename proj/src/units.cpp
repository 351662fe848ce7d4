#include "xduct/units.hpp"

namespace xduct::units {

double hz_to_rad(double hz) noexcept { return hz * kTwoPi; }

double rad_to_hz(double rad_per_s) noexcept { return rad_per_s / kTwoPi; }

}  // namespace xduct::units
