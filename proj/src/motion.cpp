#include "kinescope/motion.hpp"

#include <algorithm>
#include <cmath>

#include "kinescope/errors.hpp"

namespace kinescope {

SpeedProfile::SpeedProfile(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw InvalidArgument("speed profile needs at least one segment");
    }
    if (segments_.front().start != 0.0) {
        throw InvalidArgument("speed profile must start at t=0");
    }
    cumulative_.resize(segments_.size());
    cumulative_[0] = 0.0;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        if (!std::isfinite(segments_[k].start) || !std::isfinite(segments_[k].value)) {
            throw InvalidArgument("speed profile entries must be finite");
        }
        if (k > 0) {
            if (!(segments_[k].start > segments_[k - 1].start)) {
                throw InvalidArgument("speed profile breakpoints must be strictly increasing");
            }
            cumulative_[k] = cumulative_[k - 1] +
                             segments_[k - 1].value * (segments_[k].start - segments_[k - 1].start);
        }
    }
}

SpeedProfile SpeedProfile::constant(double value) {
    return SpeedProfile({{0.0, value}});
}

SpeedProfile SpeedProfile::piecewise(std::vector<Segment> segments) {
    return SpeedProfile(std::move(segments));
}

namespace {

std::size_t segment_index(const std::vector<SpeedProfile::Segment>& segs, double t) {
    const auto it = std::upper_bound(segs.begin(), segs.end(), t,
                                     [](double v, const auto& s) { return v < s.start; });
    return it == segs.begin() ? 0 : static_cast<std::size_t>(it - segs.begin()) - 1;
}

}  // namespace

double SpeedProfile::value_at(double t) const {
    return segments_[segment_index(segments_, t)].value;
}

double SpeedProfile::integral(double t) const {
    if (is_constant()) {
        return segments_[0].value * t;
    }
    const std::size_t k = segment_index(segments_, t);
    return cumulative_[k] + segments_[k].value * (t - segments_[k].start);
}

SpeedProfile SpeedProfile::shifted(double dt) const {
    std::vector<Segment> out;
    out.push_back({0.0, value_at(dt)});
    for (const auto& s : segments_) {
        if (s.start > dt) {
            out.push_back({s.start - dt, s.value});
        }
    }
    return SpeedProfile(std::move(out));
}

double SpeedProfile::min_value() const {
    return std::min_element(segments_.begin(), segments_.end(),
                            [](const auto& a, const auto& b) { return a.value < b.value; })
        ->value;
}

MotionProfile::MotionProfile(SpeedProfile omega, SpeedProfile film_speed, double theta0,
                             double z0)
    : omega_(std::move(omega)), film_speed_(std::move(film_speed)), theta0_(theta0), z0_(z0) {
    if (!(film_speed_.min_value() > 0.0)) {
        throw InvalidArgument("film speed must be strictly positive");
    }
    if (!std::isfinite(theta0_) || !std::isfinite(z0_)) {
        throw InvalidArgument("initial angle and film position must be finite");
    }
}

MotionProfile MotionProfile::constant(double omega, double film_speed, double theta0) {
    return MotionProfile(SpeedProfile::constant(omega), SpeedProfile::constant(film_speed), theta0);
}

MotionProfile MotionProfile::shifted(double dt) const {
    return MotionProfile(omega_.shifted(dt), film_speed_.shifted(dt), theta0_, z0_);
}

void TimeGrid::validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration) || !std::isfinite(t_start)) {
        throw InvalidArgument("time grid duration must be positive");
    }
    if (t_start < 0.0) {
        throw InvalidArgument("time grid must start at t >= 0");
    }
    if (samples < 2) {
        throw InvalidArgument("time grid needs at least 2 samples");
    }
}

double TimeGrid::time(int k) const {
    return t_start + duration * static_cast<double>(k) / static_cast<double>(samples - 1);
}

MotionState integrate(const MotionProfile& m, double t) {
    if (!(t >= 0.0)) {
        throw InvalidArgument("integration time must be >= 0");
    }
    return {m.theta0() + m.omega().integral(t), m.z0() + m.film_speed().integral(t)};
}

}  // namespace kinescope
