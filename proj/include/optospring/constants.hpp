#pragma once

// Physical constants (SI, CODATA 2018 exact values).

namespace optospring {

inline constexpr double speed_of_light = 2.99792458e8;   // m/s
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace optospring
