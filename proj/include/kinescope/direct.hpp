#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kinescope/geometry.hpp"
#include "kinescope/motion.hpp"

namespace kinescope {

struct ImageSample {
    double z;
    double ys;
    double yi;

    bool operator==(const ImageSample&) const = default;
};

struct ImageMeta {
    std::string shape;
    MotionProfile motion;
    TimeGrid grid;
};

/// The ribbon printed on the film: upper and lower bounds against film
/// coordinate z, z strictly increasing.
struct KinematicImage {
    std::vector<ImageSample> samples;
    std::optional<ImageMeta> meta;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    /// Throws InvalidArgument if z is not strictly increasing, a value is not
    /// finite, or ys < yi somewhere.
    void validate() const;
    /// Copy with every coordinate (z included) multiplied by k > 0.
    KinematicImage scaled(double k) const;
};

namespace cases {
struct CircleCenter {
    double a;
};
struct CircleRim {
    double a;
};
struct EllipseCenter {
    double a;
    double b;
};
struct SquareCenter {
    double side;
};
struct TriangleCenter {
    double side;
};
}  // namespace cases

using ClosedFormCase = std::variant<cases::CircleCenter, cases::CircleRim, cases::EllipseCenter,
                                    cases::SquareCenter, cases::TriangleCenter>;

std::string describe(const ClosedFormCase& c);

/// The shape a closed-form case describes, built through the generic types.
Shape shape_for(const ClosedFormCase& c);

/// Samples the kinematic image on the grid. Each sample is evaluated
/// independently from the integrated motion state.
KinematicImage trace(const Shape& shape, const MotionProfile& m, const TimeGrid& grid);

/// Hand-derived support heights for the worked cases.
SupportHeights closed_form(const ClosedFormCase& c, double theta);

/// Largest componentwise |support_heights - closed_form| over n_theta uniform
/// angles in [0, 2pi). Throws MismatchedCase when shape and case disagree in
/// kind.
double oracle_check(const Shape& shape, const ClosedFormCase& c, int n_theta);

/// 1024 samples per full turn over `turns` turns of a constant-speed motion.
TimeGrid default_grid(const MotionProfile& m, double turns = 1.0);

}  // namespace kinescope
