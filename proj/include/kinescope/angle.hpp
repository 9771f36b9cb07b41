#pragma once

#include <numbers>

namespace kinescope {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2pi).
double reduce_angle(double theta);

}  // namespace kinescope
