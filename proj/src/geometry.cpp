#include "kinescope/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "kinescope/angle.hpp"
#include "kinescope/errors.hpp"

namespace kinescope {

namespace {

constexpr int kRootScanSamples = 720;
constexpr double kRootTolerance = 1e-14;
constexpr int kConvexityProbes = 2048;
constexpr std::size_t kMinPolarEntries = 16;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

std::string fmt_vec(Vec2 v) {
    std::ostringstream os;
    os << '(' << v.x << ',' << v.y << ')';
    return os.str();
}

// Bisection on [lo, hi] where g(lo) and g(hi) have opposite strict signs.
template <class F>
double bisect(F&& g, double lo, double hi, double g_lo) {
    while (hi - lo > kRootTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double g_mid = g(mid);
        if (g_mid == 0.0) {
            return mid;
        }
        if (std::signbit(g_mid) == std::signbit(g_lo)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// SmoothContour

SmoothContour::SmoothContour(Kind kind, Vec2 pole_offset)
    : kind_(std::move(kind)), pole_offset_(pole_offset) {
    if (!pole_offset_.finite()) {
        throw InvalidArgument("pole offset must be finite");
    }
}

SmoothContour SmoothContour::circle(double radius, Vec2 pole_offset) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidArgument("circle radius must be positive and finite");
    }
    return SmoothContour(Circle{radius}, pole_offset);
}

SmoothContour SmoothContour::ellipse(double a, double b, Vec2 pole_offset) {
    if (!(b > 0.0) || !(a >= b) || !std::isfinite(a)) {
        throw InvalidArgument("ellipse needs a >= b > 0");
    }
    return SmoothContour(Ellipse{a, b}, pole_offset);
}

SmoothContour SmoothContour::sampled_polar(std::span<const double> beta,
                                           std::span<const double> r, Vec2 pole_offset) {
    if (beta.size() != r.size()) {
        throw InvalidArgument("polar table columns differ in length");
    }
    if (beta.size() < kMinPolarEntries) {
        throw InvalidArgument("polar table needs at least 16 entries");
    }
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (!std::isfinite(beta[i]) || !std::isfinite(r[i])) {
            throw InvalidArgument("polar table entries must be finite");
        }
        if (!(r[i] > 0.0)) {
            throw InvalidArgument("polar radii must be positive");
        }
    }
    PeriodicSpline spline(beta, r, kTwoPi);

    // Signed curvature of a polar curve has the sign of r^2 + 2 r'^2 - r r''.
    for (int k = 0; k < kConvexityProbes; ++k) {
        const double b = kTwoPi * k / kConvexityProbes;
        const double rr = spline.value(b);
        const double d1 = spline.derivative(b);
        const double d2 = spline.second_derivative(b);
        if (!(rr > 0.0)) {
            throw ConvexityViolation("interpolated polar radius is not positive");
        }
        if (!(rr * rr + 2.0 * d1 * d1 - rr * d2 > 0.0)) {
            std::ostringstream os;
            os << "polar contour is not convex near beta=" << b;
            throw ConvexityViolation(os.str());
        }
    }
    return SmoothContour(SampledPolar{std::move(spline)}, pole_offset);
}

SmoothContour SmoothContour::with_pole_offset(Vec2 offset) const {
    return SmoothContour(kind_, offset);
}

double SmoothContour::extent() const {
    return std::visit(Overloaded{
                          [](const Circle& c) { return c.radius; },
                          [](const Ellipse& e) { return std::max(e.a, e.b); },
                          [](const SampledPolar& p) {
                              const auto v = p.radius.values();
                              return *std::max_element(v.begin(), v.end());
                          },
                      },
                      kind_);
}

std::string SmoothContour::describe() const {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const Circle& c) { os << "circle(radius=" << c.radius; },
                   [&](const Ellipse& e) { os << "ellipse(a=" << e.a << ",b=" << e.b; },
                   [&](const SampledPolar& p) {
                       os << "polar(entries=" << p.radius.knots().size();
                   },
               },
               kind_);
    os << ",pole_offset=" << fmt_vec(pole_offset_) << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// ConvexPolygon

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices, Vec2 pole_offset)
    : vertices_(std::move(vertices)), pole_offset_(pole_offset) {
    if (vertices_.size() < 3) {
        throw InvalidArgument("polygon needs at least 3 vertices");
    }
    if (!pole_offset_.finite() ||
        !std::all_of(vertices_.begin(), vertices_.end(), [](Vec2 v) { return v.finite(); })) {
        throw InvalidArgument("polygon coordinates must be finite");
    }
    if (!is_convex(vertices_)) {
        throw ConvexityViolation("polygon is not strictly convex");
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        area2 += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    }
    if (area2 < 0.0) {
        throw InvalidArgument("polygon vertices must be counterclockwise");
    }
}

ConvexPolygon ConvexPolygon::with_pole_offset(Vec2 offset) const {
    return ConvexPolygon(vertices_, offset);
}

double ConvexPolygon::extent() const {
    double e = 0.0;
    for (Vec2 v : vertices_) {
        e = std::max(e, v.norm());
    }
    return e;
}

std::string ConvexPolygon::describe() const {
    std::ostringstream os;
    os << "polygon(vertices=[";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        os << (i ? "," : "") << fmt_vec(vertices_[i]);
    }
    os << "],pole_offset=" << fmt_vec(pole_offset_) << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// Contour evaluation

Vec2 contour_point(const SmoothContour& c, double beta) {
    return std::visit(Overloaded{
                          [&](const Circle& k) {
                              return Vec2{k.radius * std::cos(beta), k.radius * std::sin(beta)};
                          },
                          [&](const Ellipse& k) {
                              return Vec2{k.a * std::cos(beta), k.b * std::sin(beta)};
                          },
                          [&](const SampledPolar& k) {
                              const double r = k.radius.value(beta);
                              return Vec2{r * std::cos(beta), r * std::sin(beta)};
                          },
                      },
                      c.kind());
}

Vec2 contour_tangent(const SmoothContour& c, double beta) {
    return std::visit(
        Overloaded{
            [&](const Circle& k) {
                return Vec2{-k.radius * std::sin(beta), k.radius * std::cos(beta)};
            },
            [&](const Ellipse& k) {
                return Vec2{-k.a * std::sin(beta), k.b * std::cos(beta)};
            },
            [&](const SampledPolar& k) {
                const double r = k.radius.value(beta);
                const double dr = k.radius.derivative(beta);
                const double cb = std::cos(beta);
                const double sb = std::sin(beta);
                return Vec2{dr * cb - r * sb, dr * sb + r * cb};
            },
        },
        c.kind());
}

TangencyPair tangency_roots(const SmoothContour& c, double theta) {
    theta = reduce_angle(theta);
    const auto g = [&](double beta) { return rot_proj(contour_tangent(c, beta), theta); };

    constexpr double step = kTwoPi / kRootScanSamples;
    std::array<double, kRootScanSamples> scan{};
    for (int k = 0; k < kRootScanSamples; ++k) {
        scan[k] = g(step * k);
    }

    std::array<double, 2> roots{};
    int found = 0;
    const auto record = [&](double beta) {
        if (found < 2) {
            roots[found] = reduce_angle(beta);
        }
        ++found;
    };
    for (int k = 0; k < kRootScanSamples; ++k) {
        const double g0 = scan[k];
        const double g1 = scan[(k + 1) % kRootScanSamples];
        const double lo = step * k;
        if (g0 == 0.0) {
            record(lo);
        } else if (g1 != 0.0 && std::signbit(g0) != std::signbit(g1)) {
            const double hi = (k + 1 == kRootScanSamples) ? kTwoPi : step * (k + 1);
            record(bisect(g, lo, hi, g0));
        }
    }
    if (found != 2) {
        std::ostringstream os;
        os << "tangency condition has " << found << " roots at theta=" << theta
           << " (expected 2: contour not convex or not smooth)";
        throw ConvexityViolation(os.str());
    }

    const Vec2 pole = c.pole_offset();
    const double y0 = rot_proj(pole + contour_point(c, roots[0]), theta);
    const double y1 = rot_proj(pole + contour_point(c, roots[1]), theta);
    if (y0 == y1) {
        throw ConvexityViolation("upper and lower tangent points coincide");
    }
    return y0 > y1 ? TangencyPair{roots[0], roots[1]} : TangencyPair{roots[1], roots[0]};
}

// ---------------------------------------------------------------------------
// Support heights

PolygonEnvelope polygon_envelope(const ConvexPolygon& p, double theta) {
    theta = reduce_angle(theta);
    const auto verts = p.vertices();
    const Vec2 pole = p.pole_offset();
    const double scale = p.extent() + pole.norm();
    const double tie = 64.0 * std::numeric_limits<double>::epsilon() * scale;

    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // rotated (x, y) of every vertex; x is d(y)/d(theta)
    std::vector<Vec2> rotated(verts.size());
    double ymax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < verts.size(); ++k) {
        const Vec2 q = pole + verts[k];
        rotated[k] = {q.x * c - q.y * s, q.x * s + q.y * c};
        ymax = std::max(ymax, rotated[k].y);
        ymin = std::min(ymin, rotated[k].y);
    }

    std::size_t upper = verts.size();
    std::size_t lower = verts.size();
    for (std::size_t k = 0; k < verts.size(); ++k) {
        if (rotated[k].y >= ymax - tie &&
            (upper == verts.size() || rotated[k].x > rotated[upper].x)) {
            upper = k;
        }
        if (rotated[k].y <= ymin + tie &&
            (lower == verts.size() || rotated[k].x < rotated[lower].x)) {
            lower = k;
        }
    }
    return {ymax, ymin, upper, lower};
}

SupportHeights support_heights(const SmoothContour& c, double theta) {
    theta = reduce_angle(theta);
    const auto roots = tangency_roots(c, theta);
    const Vec2 pole = c.pole_offset();
    return {rot_proj(pole + contour_point(c, roots.beta_upper), theta),
            rot_proj(pole + contour_point(c, roots.beta_lower), theta)};
}

SupportHeights support_heights(const ConvexPolygon& p, double theta) {
    const auto env = polygon_envelope(p, theta);
    return {env.ys, env.yi};
}

SupportHeights support_heights(const Shape& shape, double theta) {
    return std::visit([&](const auto& s) { return support_heights(s, theta); }, shape);
}

double height(const Shape& shape, double theta) {
    const auto h = support_heights(shape, theta);
    return h.ys - h.yi;
}

// ---------------------------------------------------------------------------
// Polygons

ConvexPolygon regular_ngon(int n, double circumradius) {
    if (n < 3) {
        throw InvalidArgument("regular polygon needs n >= 3");
    }
    if (!(circumradius > 0.0) || !std::isfinite(circumradius)) {
        throw InvalidArgument("circumradius must be positive and finite");
    }
    std::vector<Vec2> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double phi = kPi / 2.0 - kPi / n + kTwoPi * k / n;
        v[k] = {circumradius * std::cos(phi), circumradius * std::sin(phi)};
    }
    return ConvexPolygon(std::move(v));
}

bool is_convex(std::span<const Vec2> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) {
        return false;
    }
    int positive = 0;
    int negative = 0;
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = vertices[(i + 1) % n] - vertices[i];
        const Vec2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        const double cr = cross(e0, e1);
        if (cr > 0.0) {
            ++positive;
        } else if (cr < 0.0) {
            ++negative;
        } else {
            return false;
        }
        turning += std::atan2(cr, dot(e0, e1));
    }
    if (positive != 0 && negative != 0) {
        return false;
    }
    // star polygons turn more than once
    return std::abs(std::abs(turning) - kTwoPi) < 1e-6;
}

std::string describe(const Shape& shape) {
    return std::visit([](const auto& s) { return s.describe(); }, shape);
}

Vec2 pole_offset(const Shape& shape) {
    return std::visit([](const auto& s) { return s.pole_offset(); }, shape);
}

Shape with_pole_offset(const Shape& shape, Vec2 offset) {
    return std::visit([&](const auto& s) -> Shape { return s.with_pole_offset(offset); }, shape);
}

}  // namespace kinescope
