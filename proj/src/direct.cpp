#include "kinescope/direct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinescope/angle.hpp"
#include "kinescope/errors.hpp"

namespace kinescope {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

constexpr int kSamplesPerTurn = 1024;

SupportHeights square_closed_form(double side, double theta) {
    const double h = side / 2.0;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    double ys;
    if (theta < kPi / 2.0) {
        ys = h * (s + c);
    } else if (theta < kPi) {
        ys = h * (s - c);
    } else if (theta < 3.0 * kPi / 2.0) {
        ys = h * (-s - c);
    } else {
        ys = h * (-s + c);
    }
    return {ys, -ys};
}

SupportHeights triangle_closed_form(double side, double theta) {
    const double k = side * std::sqrt(3.0) / 6.0;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double f_a = k * (std::sqrt(3.0) * s + c);
    const double f_b = k * (-std::sqrt(3.0) * s + c);
    const double f_c = -2.0 * k * c;

    double ys;
    if (theta < 2.0 * kPi / 3.0) {
        ys = f_a;
    } else if (theta < 4.0 * kPi / 3.0) {
        ys = f_c;
    } else {
        ys = f_b;
    }
    double yi;
    if (theta < kPi / 3.0) {
        yi = f_c;
    } else if (theta < kPi) {
        yi = f_b;
    } else if (theta < 5.0 * kPi / 3.0) {
        yi = f_a;
    } else {
        yi = f_c;
    }
    return {ys, yi};
}

}  // namespace

void KinematicImage::validate() const {
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        if (!std::isfinite(s.z) || !std::isfinite(s.ys) || !std::isfinite(s.yi)) {
            throw InvalidArgument("image sample " + std::to_string(k) + " is not finite");
        }
        if (s.ys < s.yi) {
            throw InvalidArgument("image sample " + std::to_string(k) + " has ys < yi");
        }
        if (k > 0 && !(s.z > samples[k - 1].z)) {
            throw InvalidArgument("image z is not strictly increasing at sample " +
                                  std::to_string(k));
        }
    }
}

KinematicImage KinematicImage::scaled(double k) const {
    if (!(k > 0.0)) {
        throw InvalidArgument("image scale must be positive");
    }
    KinematicImage out;
    out.samples.reserve(samples.size());
    for (const auto& s : samples) {
        out.samples.push_back({s.z * k, s.ys * k, s.yi * k});
    }
    return out;
}

std::string describe(const ClosedFormCase& c) {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const cases::CircleCenter& v) { os << "circle_center(a=" << v.a << ')'; },
                   [&](const cases::CircleRim& v) { os << "circle_rim(a=" << v.a << ')'; },
                   [&](const cases::EllipseCenter& v) {
                       os << "ellipse_center(a=" << v.a << ",b=" << v.b << ')';
                   },
                   [&](const cases::SquareCenter& v) {
                       os << "square_center(side=" << v.side << ')';
                   },
                   [&](const cases::TriangleCenter& v) {
                       os << "triangle_center(side=" << v.side << ')';
                   },
               },
               c);
    return os.str();
}

Shape shape_for(const ClosedFormCase& c) {
    return std::visit(
        Overloaded{
            [](const cases::CircleCenter& v) -> Shape { return SmoothContour::circle(v.a); },
            [](const cases::CircleRim& v) -> Shape {
                return SmoothContour::circle(v.a, {v.a, 0.0});
            },
            [](const cases::EllipseCenter& v) -> Shape {
                return SmoothContour::ellipse(v.a, v.b);
            },
            [](const cases::SquareCenter& v) -> Shape {
                return regular_ngon(4, v.side / std::sqrt(2.0));
            },
            [](const cases::TriangleCenter& v) -> Shape {
                return regular_ngon(3, v.side / std::sqrt(3.0));
            },
        },
        c);
}

SupportHeights closed_form(const ClosedFormCase& c, double theta) {
    theta = reduce_angle(theta);
    return std::visit(
        Overloaded{
            [](const cases::CircleCenter& v) { return SupportHeights{v.a, -v.a}; },
            [&](const cases::CircleRim& v) {
                const double s = std::sin(theta);
                return SupportHeights{v.a * (s + 1.0), v.a * (s - 1.0)};
            },
            [&](const cases::EllipseCenter& v) {
                const double s = std::sin(theta);
                const double co = std::cos(theta);
                const double y = std::sqrt(v.a * v.a * s * s + v.b * v.b * co * co);
                return SupportHeights{y, -y};
            },
            [&](const cases::SquareCenter& v) { return square_closed_form(v.side, theta); },
            [&](const cases::TriangleCenter& v) { return triangle_closed_form(v.side, theta); },
        },
        c);
}

double oracle_check(const Shape& shape, const ClosedFormCase& c, int n_theta) {
    if (n_theta < 1) {
        throw InvalidArgument("oracle_check needs at least one angle");
    }
    const auto smooth_kind = [&]() -> int {
        if (const auto* sc = std::get_if<SmoothContour>(&shape)) {
            return static_cast<int>(sc->kind().index());
        }
        return -1;
    }();
    const auto polygon_size = [&]() -> std::size_t {
        if (const auto* p = std::get_if<ConvexPolygon>(&shape)) {
            return p->size();
        }
        return 0;
    }();
    const bool matches = std::visit(
        Overloaded{
            [&](const cases::CircleCenter&) { return smooth_kind == 0; },
            [&](const cases::CircleRim&) { return smooth_kind == 0; },
            [&](const cases::EllipseCenter&) { return smooth_kind == 1; },
            [&](const cases::SquareCenter&) { return polygon_size == 4; },
            [&](const cases::TriangleCenter&) { return polygon_size == 3; },
        },
        c);
    if (!matches) {
        throw MismatchedCase(describe(shape) + " does not match case " + describe(c));
    }

    double worst = 0.0;
    for (int k = 0; k < n_theta; ++k) {
        const double theta = kTwoPi * k / n_theta;
        const auto generic = support_heights(shape, theta);
        const auto exact = closed_form(c, theta);
        worst = std::max({worst, std::abs(generic.ys - exact.ys), std::abs(generic.yi - exact.yi)});
    }
    return worst;
}

KinematicImage trace(const Shape& shape, const MotionProfile& m, const TimeGrid& grid) {
    grid.validate();
    KinematicImage img;
    img.samples.reserve(static_cast<std::size_t>(grid.samples));
    for (int k = 0; k < grid.samples; ++k) {
        const auto state = integrate(m, grid.time(k));
        const auto h = support_heights(shape, state.theta);
        img.samples.push_back({state.z, h.ys, h.yi});
    }
    // film speed is positive, so z is already increasing; keep the order explicit
    std::stable_sort(img.samples.begin(), img.samples.end(),
                     [](const auto& a, const auto& b) { return a.z < b.z; });
    img.meta = ImageMeta{describe(shape), m, grid};
    return img;
}

TimeGrid default_grid(const MotionProfile& m, double turns) {
    if (!m.omega().is_constant() || m.omega().value_at(0.0) == 0.0) {
        throw InvalidArgument("default grid needs a constant nonzero angular speed");
    }
    if (!(turns > 0.0)) {
        throw InvalidArgument("number of turns must be positive");
    }
    const double omega = std::abs(m.omega().value_at(0.0));
    TimeGrid g;
    g.t_start = 0.0;
    g.duration = turns * kTwoPi / omega;
    g.samples = std::max(2, static_cast<int>(std::lround(kSamplesPerTurn * turns)));
    return g;
}

}  // namespace kinescope
