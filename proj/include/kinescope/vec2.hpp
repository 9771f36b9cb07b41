#pragma once

#include <cmath>

namespace kinescope {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Counterclockwise rotation of p by theta.
inline Vec2 rotate(Vec2 p, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {p.x * c - p.y * s, p.x * s + p.y * c};
}

/// Y component of rotate(p, theta): x sin(theta) + y cos(theta).
inline double rot_proj(Vec2 p, double theta) {
    return p.x * std::sin(theta) + p.y * std::cos(theta);
}

}  // namespace kinescope
