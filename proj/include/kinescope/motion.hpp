#pragma once

#include <vector>

namespace kinescope {

/// Piecewise-constant speed: `values[k]` holds on [starts[k], starts[k+1]),
/// the last value holds forever. starts[0] is always 0.
class SpeedProfile {
public:
    struct Segment {
        double start;
        double value;
    };

    static SpeedProfile constant(double value);
    /// Breakpoints must be strictly increasing and the first must be 0.
    static SpeedProfile piecewise(std::vector<Segment> segments);

    double value_at(double t) const;
    /// Integral of the profile over [0, t], t >= 0.
    double integral(double t) const;
    /// Profile seen by a clock started at `dt`.
    SpeedProfile shifted(double dt) const;

    bool is_constant() const { return segments_.size() == 1; }
    double min_value() const;
    const std::vector<Segment>& segments() const { return segments_; }

private:
    explicit SpeedProfile(std::vector<Segment> segments);

    std::vector<Segment> segments_;
    std::vector<double> cumulative_;  // integral up to each segment start
};

/// Angular speed and film speed with initial conditions.
class MotionProfile {
public:
    /// Throws InvalidArgument unless the film speed is strictly positive.
    MotionProfile(SpeedProfile omega, SpeedProfile film_speed, double theta0 = 0.0,
                  double z0 = 0.0);

    static MotionProfile constant(double omega, double film_speed, double theta0 = 0.0);

    const SpeedProfile& omega() const { return omega_; }
    const SpeedProfile& film_speed() const { return film_speed_; }
    double theta0() const { return theta0_; }
    double z0() const { return z0_; }

    MotionProfile shifted(double dt) const;

private:
    SpeedProfile omega_;
    SpeedProfile film_speed_;
    double theta0_;
    double z0_;
};

struct TimeGrid {
    double t_start = 0.0;
    double duration = 1.0;
    int samples = 2;

    /// Throws InvalidArgument unless duration > 0 and samples >= 2.
    void validate() const;
    /// k-th sample time; both ends of the interval are included.
    double time(int k) const;
};

struct MotionState {
    double theta;
    double z;
};

/// theta(t) = theta0 + int_0^t omega, z(t) = z0 + int_0^t v. Exact for
/// piecewise-constant profiles.
MotionState integrate(const MotionProfile& m, double t);

}  // namespace kinescope
