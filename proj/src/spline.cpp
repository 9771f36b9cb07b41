#include "kinescope/spline.hpp"

#include <algorithm>
#include <cmath>

#include "kinescope/errors.hpp"

namespace kinescope {

namespace {

// Solves a tridiagonal system in place (Thomas algorithm). `sub[0]` and
// `super[n-1]` are ignored.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> super, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
    }
    return x;
}

// Cyclic tridiagonal solve via Sherman-Morrison. The corner entries are
// A[0][n-1] = sub[0] and A[n-1][0] = super[n-1].
std::vector<double> solve_cyclic(const std::vector<double>& sub, std::vector<double> diag,
                                 const std::vector<double>& super,
                                 const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    const double beta = sub[0];
    const double alpha = super[n - 1];
    const double gamma = -diag[0];
    diag[0] -= gamma;
    diag[n - 1] -= alpha * beta / gamma;

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;

    auto x = solve_tridiagonal(sub, diag, super, rhs);
    auto z = solve_tridiagonal(sub, diag, super, u);
    const double factor =
        (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] -= factor * z[i];
    }
    return x;
}

}  // namespace

PeriodicSpline::PeriodicSpline(std::span<const double> x, std::span<const double> y,
                               double period)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), period_(period) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) {
        throw InvalidArgument("periodic spline needs at least 3 knots and matching values");
    }
    if (!(period_ > 0.0) || x_.front() < 0.0 || x_.back() >= period_) {
        throw InvalidArgument("spline knots must lie in [0, period)");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw InvalidArgument("spline knots must be strictly increasing");
        }
    }

    std::vector<double> h(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
    }
    h[n - 1] = x_[0] + period_ - x_[n - 1];

    std::vector<double> sub(n), diag(n), super(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const std::size_t next = (i + 1) % n;
        sub[i] = h[prev];
        diag[i] = 2.0 * (h[prev] + h[i]);
        super[i] = h[i];
        rhs[i] = 6.0 * ((y_[next] - y_[i]) / h[i] - (y_[i] - y_[prev]) / h[prev]);
    }
    m_ = solve_cyclic(sub, diag, super, rhs);
}

PeriodicSpline::Local PeriodicSpline::locate(double x) const {
    const std::size_t n = x_.size();
    double xr = std::fmod(x, period_);
    if (xr < 0.0) {
        xr += period_;
    }
    if (xr < x_.front()) {
        return {n - 1, x_.front() + period_ - x_.back(), xr + period_ - x_.back()};
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), xr);
    const auto i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = (i + 1 < n) ? x_[i + 1] - x_[i] : x_.front() + period_ - x_.back();
    return {i, h, xr - x_[i]};
}

double PeriodicSpline::value(double x) const {
    const auto [i, h, t] = locate(x);
    const std::size_t j = (i + 1) % x_.size();
    const double u = h - t;
    return m_[i] * u * u * u / (6.0 * h) + m_[j] * t * t * t / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * u + (y_[j] / h - m_[j] * h / 6.0) * t;
}

double PeriodicSpline::derivative(double x) const {
    const auto [i, h, t] = locate(x);
    const std::size_t j = (i + 1) % x_.size();
    const double u = h - t;
    return -m_[i] * u * u / (2.0 * h) + m_[j] * t * t / (2.0 * h) + (y_[j] - y_[i]) / h -
           (m_[j] - m_[i]) * h / 6.0;
}

double PeriodicSpline::second_derivative(double x) const {
    const auto [i, h, t] = locate(x);
    const std::size_t j = (i + 1) % x_.size();
    return (m_[i] * (h - t) + m_[j] * t) / h;
}

}  // namespace kinescope
