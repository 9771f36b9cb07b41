#pragma once

#include <span>
#include <vector>

namespace kinescope {

/// Periodic cubic spline through (x_i, y_i) on a circle of circumference
/// `period`. Knots must be strictly increasing inside [0, period).
class PeriodicSpline {
public:
    PeriodicSpline(std::span<const double> x, std::span<const double> y, double period);

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    double period() const { return period_; }
    std::span<const double> knots() const { return x_; }
    std::span<const double> values() const { return y_; }

private:
    struct Local {
        std::size_t i;  // left knot
        double h;       // interval width
        double t;       // offset from left knot
    };
    Local locate(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots
    double period_;
};

}  // namespace kinescope
