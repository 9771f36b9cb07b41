#include "kinescope/angle.hpp"

#include <cmath>

namespace kinescope {

double reduce_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // -tiny + 2pi rounds up to 2pi
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

}  // namespace kinescope
