#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinescope/direct.hpp"

namespace kinescope {

enum class Parity { even, odd, circle };

std::string to_string(Parity p);

struct Extremes {
    double m;        // min(ys) - midline: apothem for a regular polygon
    double M;        // max(ys) - midline: circumradius
    double midline;  // (max ys + min yi) / 2
};

/// Side count inferred from m / M. `n` is empty for a circle.
struct SideCount {
    std::optional<int> n;
    double n_real;  // pi / arccos(m / M) before rounding
};

struct ParityResult {
    Parity parity;
    double rms_even;      // RMS(yi(z) + ys(z) - 2 midline)
    double rms_odd;       // best RMS(yi(z) + ys(z + delta) - 2 midline)
    double best_shift;    // delta achieving rms_odd
};

struct PeriodEstimate {
    double period;
    std::vector<double> peaks;  // refined z of each interior ys maximum
    double spread;              // (max - min spacing) / mean spacing
};

struct InverseOptions {
    int n_max = 64;
    /// Relative margin the half-period shift must win by to call a trace odd.
    double parity_margin = 0.25;
};

struct InverseReport {
    std::optional<int> n;  // empty means CIRCLE
    double n_real;
    double apothem_m;
    double circumradius_M;
    Parity parity;
    std::optional<double> omega_over_v;
    double midline;
    double residual;
    std::vector<std::string> warnings;

    bool is_circle() const { return !n.has_value(); }
};

Extremes extremes(const KinematicImage& img);

/// Throws InvalidArgument unless 0 < m <= M.
SideCount side_count(double m, double M, int n_max = 64);

ParityResult parity_test(const KinematicImage& img, const InverseOptions& opts = {});

/// Mean spacing of the interior maxima of ys. Throws InsufficientData when
/// fewer than two are present.
PeriodEstimate period_estimate(const KinematicImage& img);

InverseReport identify(const KinematicImage& img, const InverseOptions& opts = {});

}  // namespace kinescope
