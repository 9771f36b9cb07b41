#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kinescope/spline.hpp"
#include "kinescope/vec2.hpp"

namespace kinescope {

struct Circle {
    double radius;
};

struct Ellipse {
    double a;  // semi-axis along body x
    double b;  // semi-axis along body y
};

/// Closed star-shaped curve given by a table of polar radii around the
/// contour origin, interpolated by a periodic cubic spline in beta.
struct SampledPolar {
    PeriodicSpline radius;
};

/// Smooth closed convex contour in the body frame. `pole_offset` is the
/// vector from the rotation pole to the contour origin.
class SmoothContour {
public:
    using Kind = std::variant<Circle, Ellipse, SampledPolar>;

    static SmoothContour circle(double radius, Vec2 pole_offset = {});
    static SmoothContour ellipse(double a, double b, Vec2 pole_offset = {});
    /// Throws ConvexityViolation when the interpolated curve is not convex.
    static SmoothContour sampled_polar(std::span<const double> beta, std::span<const double> r,
                                       Vec2 pole_offset = {});

    const Kind& kind() const { return kind_; }
    Vec2 pole_offset() const { return pole_offset_; }
    SmoothContour with_pole_offset(Vec2 offset) const;

    /// Upper bound on |r(beta)|; used to scale tolerances.
    double extent() const;
    std::string describe() const;

private:
    SmoothContour(Kind kind, Vec2 pole_offset);

    Kind kind_;
    Vec2 pole_offset_;
};

/// Strictly convex polygon, vertices counterclockwise in the body frame.
class ConvexPolygon {
public:
    /// Throws InvalidArgument for fewer than 3 vertices or clockwise order,
    /// ConvexityViolation for reflex or collinear corners.
    explicit ConvexPolygon(std::vector<Vec2> vertices, Vec2 pole_offset = {});

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Vec2 pole_offset() const { return pole_offset_; }
    ConvexPolygon with_pole_offset(Vec2 offset) const;

    double extent() const;
    std::string describe() const;

private:
    std::vector<Vec2> vertices_;
    Vec2 pole_offset_;
};

using Shape = std::variant<SmoothContour, ConvexPolygon>;

struct TangencyPair {
    double beta_upper;
    double beta_lower;
};

struct SupportHeights {
    double ys;  // upper support height
    double yi;  // lower support height
};

struct PolygonEnvelope {
    double ys;
    double yi;
    std::size_t upper_vertex;
    std::size_t lower_vertex;
};

Vec2 contour_point(const SmoothContour& c, double beta);

/// d/dbeta of contour_point. Not normalized.
Vec2 contour_tangent(const SmoothContour& c, double beta);

/// Roots of rot_proj(contour_tangent(c, beta), theta) = 0: the points where
/// the rotated tangent is horizontal. Bracketed on a uniform 720-point scan,
/// then bisected. Throws ConvexityViolation unless exactly two roots exist.
TangencyPair tangency_roots(const SmoothContour& c, double theta);

/// Extreme vertices of the rotated polygon. Ties (an edge horizontal after
/// rotation) go to the vertex that keeps control on [theta, theta + eps),
/// i.e. the one moving up fastest for the upper envelope and down fastest
/// for the lower one.
PolygonEnvelope polygon_envelope(const ConvexPolygon& p, double theta);

SupportHeights support_heights(const SmoothContour& c, double theta);
SupportHeights support_heights(const ConvexPolygon& p, double theta);
SupportHeights support_heights(const Shape& shape, double theta);

double height(const Shape& shape, double theta);

/// Regular n-gon centred on the pole with a horizontal top edge: vertex k sits
/// at angle pi/2 - pi/n + 2 pi k / n.
ConvexPolygon regular_ngon(int n, double circumradius);

/// True iff consecutive edge cross products share one strict sign and the
/// boundary winds exactly once.
bool is_convex(std::span<const Vec2> vertices);

std::string describe(const Shape& shape);
Vec2 pole_offset(const Shape& shape);
Shape with_pole_offset(const Shape& shape, Vec2 offset);

}  // namespace kinescope
