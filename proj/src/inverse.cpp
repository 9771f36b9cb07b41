#include "kinescope/inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "kinescope/angle.hpp"
#include "kinescope/errors.hpp"

namespace kinescope {

namespace {

constexpr std::size_t kMinSamples = 8;
constexpr std::size_t kStencil = 4;  // samples each side used by the refinement
constexpr int kShiftGrid = 64;
constexpr double kMidlineWarning = 1e-6;
constexpr double kSpreadWarning = 0.01;
constexpr double kFlatRelative = 1e-9;

// y = a u^2 + b u + c with u = x - origin
struct Quadratic {
    double a;
    double b;
    double c;

    double operator()(double u) const { return (a * u + b) * u + c; }
};

Quadratic fit_quadratic(double u0, double y0, double u1, double y1, double u2, double y2) {
    const double d01 = (y1 - y0) / (u1 - u0);
    const double d12 = (y2 - y1) / (u2 - u1);
    const double a = (d12 - d01) / (u2 - u0);
    const double b = d01 - a * (u0 + u1);
    const double c = y0 - (a * u0 + b) * u0;
    return {a, b, c};
}

// Interpolating cubic through four points, Lagrange form
struct Cubic {
    std::array<double, 4> u;
    std::array<double, 4> y;

    double operator()(double t) const {
        double s = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            double w = y[j];
            for (std::size_t k = 0; k < 4; ++k) {
                if (k != j) {
                    w *= (t - u[k]) / (u[j] - u[k]);
                }
            }
            s += w;
        }
        return s;
    }
};

// Root of f on [lo, hi] by bisection, or NaN without a sign change.
template <class F>
double bracketed_root(F f, double lo, double hi) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) {
        return lo;
    }
    if (fhi == 0.0) {
        return hi;
    }
    if ((flo < 0.0) == (fhi < 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    for (int it = 0; it < 100 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Peak {
    double x;
    double y;
};

// Refines the discrete maximum at index i of y(x). A smooth peak gets the
// 3-point parabola vertex. A corner (two smooth branches meeting, as at a
// control-vertex switch) gets the intersection of one-sided cubics, or of
// one-sided quadratics when the cubics do not cross between the neighbours. The
// correction never exceeds half the larger neighbouring step.
Peak refine_max(std::span<const double> x, std::span<const double> y, std::size_t i) {
    const double xi = x[i];
    const double yi = y[i];
    if (i < kStencil || i + kStencil >= x.size()) {
        return {xi, yi};
    }
    const auto u = [&](std::size_t k) { return x[k] - xi; };

    const auto mid = fit_quadratic(u(i - 1), y[i - 1], 0.0, yi, u(i + 1), y[i + 1]);
    const auto left = fit_quadratic(u(i - 3), y[i - 3], u(i - 2), y[i - 2], u(i - 1), y[i - 1]);
    const auto right = fit_quadratic(u(i + 1), y[i + 1], u(i + 2), y[i + 2], u(i + 3), y[i + 3]);

    const double lo = u(i - 1);
    const double hi = u(i + 1);
    const double half_step = 0.5 * (hi - lo);
    const double jump = left.b - right.b;

    Peak best{xi, yi};
    bool refined = false;
    if (jump > 0.0 && jump > std::abs(mid.a) * half_step) {
        // corner: solve left(u) = right(u) on [lo, hi], nearest root to 0
        const double qa = left.a - right.a;
        const double qb = left.b - right.b;
        const double qc = left.c - right.c;
        std::array<double, 2> roots{std::numeric_limits<double>::quiet_NaN(),
                                    std::numeric_limits<double>::quiet_NaN()};
        if (std::abs(qa) * (hi - lo) < 1e-12 * std::abs(qb)) {
            roots[0] = -qc / qb;
        } else {
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc >= 0.0) {
                const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
                roots[0] = q / qa;
                roots[1] = q != 0.0 ? qc / q : roots[0];
            }
        }
        double chosen = std::numeric_limits<double>::quiet_NaN();
        for (double r : roots) {
            if (std::isfinite(r) && r >= lo && r <= hi &&
                (!std::isfinite(chosen) || std::abs(r) < std::abs(chosen))) {
                chosen = r;
            }
        }
        const Cubic left3{{u(i - 4), u(i - 3), u(i - 2), u(i - 1)},
                          {y[i - 4], y[i - 3], y[i - 2], y[i - 1]}};
        const Cubic right3{{u(i + 1), u(i + 2), u(i + 3), u(i + 4)},
                           {y[i + 1], y[i + 2], y[i + 3], y[i + 4]}};
        const double crossing =
            std::isfinite(chosen)
                ? bracketed_root([&](double t) { return left3(t) - right3(t); }, lo, hi)
                : std::numeric_limits<double>::quiet_NaN();
        if (std::isfinite(crossing)) {
            best = {xi + crossing, left3(crossing)};
            refined = true;
        } else if (std::isfinite(chosen)) {
            best = {xi + chosen, left(chosen)};
            refined = true;
        }
    }
    if (!refined && mid.a < 0.0) {
        const double vertex = -mid.b / (2.0 * mid.a);
        if (vertex >= lo && vertex <= hi) {
            best = {xi + vertex, mid(vertex)};
        }
    }

    const double cap = 0.5 * std::max(yi - y[i - 1], yi - y[i + 1]);
    best.y = std::clamp(best.y, yi, yi + std::max(cap, 0.0));
    return best;
}

enum class Sense { max, min };

// Global extremum of y over the whole image with interior refinement.
double refined_extreme(std::span<const double> x, std::span<const double> y, Sense sense) {
    std::vector<double> v(y.begin(), y.end());
    if (sense == Sense::min) {
        for (double& e : v) {
            e = -e;
        }
    }
    const auto interior_begin = v.begin() + kStencil;
    const auto interior_end = v.end() - kStencil;
    const auto it = std::max_element(interior_begin, interior_end);
    double best = refine_max(x, v, static_cast<std::size_t>(it - v.begin())).y;
    for (std::size_t k = 0; k < kStencil; ++k) {
        best = std::max({best, v[k], v[v.size() - 1 - k]});
    }
    return sense == Sense::min ? -best : best;
}

struct Columns {
    std::vector<double> z;
    std::vector<double> ys;
    std::vector<double> yi;
};

Columns columns(const KinematicImage& img) {
    Columns c;
    c.z.reserve(img.size());
    c.ys.reserve(img.size());
    c.yi.reserve(img.size());
    for (const auto& s : img.samples) {
        c.z.push_back(s.z);
        c.ys.push_back(s.ys);
        c.yi.push_back(s.yi);
    }
    return c;
}

void require_samples(const KinematicImage& img) {
    if (img.size() < kMinSamples) {
        throw InsufficientData("image has " + std::to_string(img.size()) +
                               " samples; at least 8 are needed");
    }
}

double circle_tolerance(int n_max) {
    return 1.0 - std::cos(kPi / n_max);
}

// Linear interpolation of ys at z; z must lie inside the image.
double interpolate(const Columns& c, double z) {
    const auto it = std::upper_bound(c.z.begin(), c.z.end(), z);
    if (it == c.z.begin()) {
        return c.ys.front();
    }
    if (it == c.z.end()) {
        return c.ys.back();
    }
    const auto k = static_cast<std::size_t>(it - c.z.begin());
    const double t = (z - c.z[k - 1]) / (c.z[k] - c.z[k - 1]);
    return c.ys[k - 1] + t * (c.ys[k] - c.ys[k - 1]);
}

double shifted_rms(const Columns& c, double midline, double delta) {
    double sum = 0.0;
    std::size_t count = 0;
    const double z_last = c.z.back();
    for (std::size_t k = 0; k < c.z.size() && c.z[k] + delta <= z_last; ++k) {
        const double r = c.yi[k] + interpolate(c, c.z[k] + delta) - 2.0 * midline;
        sum += r * r;
        ++count;
    }
    return count ? std::sqrt(sum / static_cast<double>(count))
                 : std::numeric_limits<double>::infinity();
}

ParityResult parity_from(const Columns& c, const Extremes& ex, double period,
                         const InverseOptions& opts) {
    ParityResult out{Parity::even, 0.0, 0.0, 0.0};
    double sum = 0.0;
    for (std::size_t k = 0; k < c.z.size(); ++k) {
        const double r = c.yi[k] + c.ys[k] - 2.0 * ex.midline;
        sum += r * r;
    }
    out.rms_even = std::sqrt(sum / static_cast<double>(c.z.size()));

    const double cell = period / kShiftGrid;
    int best = 0;
    double best_rms = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kShiftGrid; ++j) {
        const double r = shifted_rms(c, ex.midline, (j + 0.5) * cell);
        if (r < best_rms) {
            best_rms = r;
            best = j;
        }
    }
    const double lo = std::max(best * cell - 0.5 * cell, 0.5 * cell);
    const double hi = std::min((best + 1.5) * cell, period - 0.5 * cell);
    const auto [shift, rms] = boost::math::tools::brent_find_minima(
        [&](double d) { return shifted_rms(c, ex.midline, d); }, lo, hi, 40);
    out.best_shift = rms < best_rms ? shift : (best + 0.5) * cell;
    out.rms_odd = std::min(rms, best_rms);

    const bool half_period = out.best_shift >= 0.25 * period && out.best_shift <= 0.75 * period;
    out.parity = (half_period && out.rms_odd * (1.0 + opts.parity_margin) < out.rms_even)
                     ? Parity::odd
                     : Parity::even;
    return out;
}

PeriodEstimate period_from(const Columns& c) {
    const auto [lo_it, hi_it] = std::minmax_element(c.ys.begin(), c.ys.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double range = hi - lo;
    if (!(range > kFlatRelative * std::max(std::abs(hi), std::abs(lo))) || range == 0.0) {
        throw InsufficientData("upper curve is flat: no interior maxima");
    }
    const double mid = 0.5 * (hi + lo);
    const double enter = mid + 0.25 * range;
    const double leave = mid - 0.25 * range;

    // hysteresis segmentation; only segments bounded on both sides by low
    // stretches are interior maxima
    PeriodEstimate out{0.0, {}, 0.0};
    enum class State { unknown, low, high } state = State::unknown;
    std::size_t start = 0;
    bool start_valid = false;
    for (std::size_t k = 0; k < c.ys.size(); ++k) {
        const double v = c.ys[k];
        if (v > enter && state != State::high) {
            start_valid = state == State::low;
            state = State::high;
            start = k;
        } else if (v < leave && state != State::low) {
            if (state == State::high && start_valid) {
                const auto first = c.ys.begin() + static_cast<std::ptrdiff_t>(start);
                const auto last = c.ys.begin() + static_cast<std::ptrdiff_t>(k);
                const auto idx = static_cast<std::size_t>(std::max_element(first, last) -
                                                          c.ys.begin());
                if (idx >= kStencil && idx + kStencil < c.ys.size()) {
                    out.peaks.push_back(refine_max(c.z, c.ys, idx).x);
                }
            }
            state = State::low;
        }
    }
    if (out.peaks.size() < 2) {
        throw InsufficientData("fewer than two interior maxima of the upper curve");
    }
    const std::size_t gaps = out.peaks.size() - 1;
    out.period = (out.peaks.back() - out.peaks.front()) / static_cast<double>(gaps);
    double min_gap = std::numeric_limits<double>::infinity();
    double max_gap = 0.0;
    for (std::size_t k = 0; k < gaps; ++k) {
        const double g = out.peaks[k + 1] - out.peaks[k];
        min_gap = std::min(min_gap, g);
        max_gap = std::max(max_gap, g);
    }
    out.spread = (max_gap - min_gap) / out.period;
    return out;
}

Extremes extremes_from(const Columns& c) {
    const double ys_max = refined_extreme(c.z, c.ys, Sense::max);
    const double ys_min = refined_extreme(c.z, c.ys, Sense::min);
    const double yi_min = refined_extreme(c.z, c.yi, Sense::min);
    const double midline = 0.5 * (ys_max + yi_min);
    Extremes ex{ys_min - midline, ys_max - midline, midline};
    if (std::abs(ex.M - ex.m) < 1e-12 && std::abs(ex.M) < 1e-12) {
        throw DegenerateImage("image is flat and of zero height");
    }
    return ex;
}

double mean_square(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

// RMS between ys and a phase-aligned resynthesis of regular_ngon(n, M).
double resynthesis_residual(const Columns& c, const Extremes& ex, int n, double omega_over_v) {
    const auto poly = regular_ngon(n, ex.M);
    const double z0 = c.z.front();
    std::vector<double> model(c.z.size());
    const auto synth = [&](double phase) {
        for (std::size_t k = 0; k < c.z.size(); ++k) {
            model[k] = ex.midline + polygon_envelope(poly, omega_over_v * (c.z[k] - z0) + phase).ys;
        }
    };

    const double mean = std::accumulate(c.ys.begin(), c.ys.end(), 0.0) / c.ys.size();
    const double dtheta = omega_over_v * (c.z.back() - z0) / static_cast<double>(c.z.size() - 1);
    const double phase_period = kTwoPi / n;
    const int steps = std::max(8, static_cast<int>(std::ceil(phase_period / dtheta)));
    const double step = phase_period / steps;

    std::vector<double> corr(static_cast<std::size_t>(steps));
    for (int j = 0; j < steps; ++j) {
        synth(j * step);
        double s = 0.0;
        for (std::size_t k = 0; k < c.z.size(); ++k) {
            s += (c.ys[k] - mean) * model[k];
        }
        corr[j] = s;
    }
    const auto best = static_cast<int>(std::max_element(corr.begin(), corr.end()) - corr.begin());
    const double cm = corr[(best + steps - 1) % steps];
    const double c0 = corr[best];
    const double cp = corr[(best + 1) % steps];
    const double denom = cm - 2.0 * c0 + cp;
    double offset = denom < 0.0 ? 0.5 * (cm - cp) / denom : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    const double phase = (best + offset) * step;

    const auto objective = [&](double p) {
        synth(p);
        return mean_square(c.ys, model);
    };
    const auto [p, mse] =
        boost::math::tools::brent_find_minima(objective, phase - step, phase + step, 50);
    return std::sqrt(std::min(mse, objective(phase)));
}

}  // namespace

std::string to_string(Parity p) {
    switch (p) {
        case Parity::even:
            return "even";
        case Parity::odd:
            return "odd";
        case Parity::circle:
            return "circle";
    }
    return "unknown";
}

Extremes extremes(const KinematicImage& img) {
    require_samples(img);
    return extremes_from(columns(img));
}

SideCount side_count(double m, double M, int n_max) {
    if (!(m > 0.0) || !(m <= M)) {
        throw InvalidArgument("side count needs 0 < m <= M");
    }
    if (n_max < 3) {
        throw InvalidArgument("n_max must be at least 3");
    }
    const double ratio = std::clamp(m / M, -1.0, 1.0);
    const double angle = std::acos(ratio);
    const double n_real =
        angle > 0.0 ? kPi / angle : std::numeric_limits<double>::infinity();
    if (ratio > std::cos(kPi / n_max)) {
        return {std::nullopt, n_real};
    }
    const long n = std::lround(n_real);
    if (n < 3) {
        std::ostringstream os;
        os << "m/M = " << ratio << " is below the equilateral-triangle limit";
        throw DegenerateImage(os.str());
    }
    return {static_cast<int>(n), n_real};
}

ParityResult parity_test(const KinematicImage& img, const InverseOptions& opts) {
    require_samples(img);
    const auto c = columns(img);
    const auto ex = extremes_from(c);
    if (ex.M - ex.m < circle_tolerance(opts.n_max) * ex.M) {
        return {Parity::circle, 0.0, 0.0, 0.0};
    }
    return parity_from(c, ex, period_from(c).period, opts);
}

PeriodEstimate period_estimate(const KinematicImage& img) {
    require_samples(img);
    return period_from(columns(img));
}

InverseReport identify(const KinematicImage& img, const InverseOptions& opts) {
    require_samples(img);
    img.validate();
    const auto c = columns(img);
    const auto ex = extremes_from(c);

    InverseReport report;
    report.apothem_m = ex.m;
    report.circumradius_M = ex.M;
    report.midline = ex.midline;
    if (std::abs(ex.midline) > kMidlineWarning * ex.M) {
        std::ostringstream os;
        os << "midline " << ex.midline << " is off zero; the pole may not be the centroid";
        report.warnings.push_back(os.str());
    }

    const auto sc = side_count(ex.m, ex.M, opts.n_max);
    report.n = sc.n;
    report.n_real = sc.n_real;

    if (!sc.n) {
        report.parity = Parity::circle;
        double sum = 0.0;
        for (double v : c.ys) {
            const double d = v - (ex.midline + ex.M);
            sum += d * d;
        }
        report.residual = std::sqrt(sum / static_cast<double>(c.ys.size()));
        return report;
    }
    const int n = *sc.n;

    const auto pe = period_from(c);
    if (pe.spread > kSpreadWarning) {
        std::ostringstream os;
        os << "spacing of maxima varies by " << 100.0 * pe.spread << "%";
        report.warnings.push_back(os.str());
    }

    const auto par = parity_from(c, ex, pe.period, opts);
    report.parity = par.parity;
    const Parity expected = n % 2 == 0 ? Parity::even : Parity::odd;
    if (par.parity != expected) {
        report.warnings.push_back("symmetry test says " + to_string(par.parity) +
                                  " but n=" + std::to_string(n));
    }

    report.omega_over_v = kTwoPi / (n * pe.period);
    report.residual = resynthesis_residual(c, ex, n, *report.omega_over_v);
    return report;
}

}  // namespace kinescope
