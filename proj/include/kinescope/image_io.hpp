#pragma once

#include <iosfwd>
#include <string>

#include "kinescope/direct.hpp"
#include "kinescope/inverse.hpp"

namespace kinescope::io {

/// `z,ys,yi` header, one sample per line, 17 significant digits.
void write_csv(std::ostream& os, const KinematicImage& img);
/// Throws ParseError on a bad header, short row, or non-numeric field.
KinematicImage read_csv(std::istream& is);

/// 800x300 plot of ys and yi against z with the ribbon between them filled.
void write_svg(std::ostream& os, const KinematicImage& img, const std::string& title = {});

/// `key=value` lines: n, n_real, parity, m, M, midline, omega_over_v,
/// residual, warnings.
void write_report(std::ostream& os, const InverseReport& report);

/// `%.17g`: enough digits to read back the identical double.
std::string format_double(double v);

}  // namespace kinescope::io
