#include "kinescope/image_io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "kinescope/errors.hpp"

namespace kinescope::io {

namespace {

constexpr double kSvgWidth = 800.0;
constexpr double kSvgHeight = 300.0;
constexpr double kSvgMargin = 0.05;

double parse_field(std::string_view text, std::size_t line) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ": '" + s + "' is not a number");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const KinematicImage& img) {
    os << "z,ys,yi\n";
    for (const auto& s : img.samples) {
        os << format_double(s.z) << ',' << format_double(s.ys) << ',' << format_double(s.yi)
           << '\n';
    }
}

KinematicImage read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != "z,ys,yi") {
        throw ParseError("line 1: expected header 'z,ys,yi'");
    }
    KinematicImage img;
    std::size_t number = 1;
    while (std::getline(is, line)) {
        ++number;
        const auto row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError("line " + std::to_string(number) + ": expected 3 fields");
        }
        img.samples.push_back({parse_field(trim(row.substr(0, c1)), number),
                               parse_field(trim(row.substr(c1 + 1, c2 - c1 - 1)), number),
                               parse_field(trim(row.substr(c2 + 1)), number)});
    }
    try {
        img.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return img;
}

void write_svg(std::ostream& os, const KinematicImage& img, const std::string& title) {
    double z_lo = 0.0, z_hi = 1.0, y_lo = -1.0, y_hi = 1.0;
    if (!img.empty()) {
        z_lo = img.samples.front().z;
        z_hi = img.samples.back().z;
        y_lo = img.samples.front().yi;
        y_hi = img.samples.front().ys;
        for (const auto& s : img.samples) {
            y_lo = std::min(y_lo, s.yi);
            y_hi = std::max(y_hi, s.ys);
        }
    }
    if (z_hi <= z_lo) {
        z_hi = z_lo + 1.0;
    }
    if (y_hi <= y_lo) {
        y_hi = y_lo + 1.0;
    }
    const double mz = kSvgMargin * (z_hi - z_lo);
    const double my = kSvgMargin * (y_hi - y_lo);
    z_lo -= mz;
    z_hi += mz;
    y_lo -= my;
    y_hi += my;

    const auto px = [&](double z) { return (z - z_lo) / (z_hi - z_lo) * kSvgWidth; };
    const auto py = [&](double y) { return (y_hi - y) / (y_hi - y_lo) * kSvgHeight; };
    const auto point = [&](double z, double y) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", px(z), py(y));
        return std::string(buf);
    };

    std::ostringstream upper, lower, ribbon;
    for (std::size_t k = 0; k < img.size(); ++k) {
        const auto& s = img.samples[k];
        upper << (k ? " " : "") << point(s.z, s.ys);
        lower << (k ? " " : "") << point(s.z, s.yi);
    }
    ribbon << upper.str();
    for (std::size_t k = img.size(); k-- > 0;) {
        ribbon << ' ' << point(img.samples[k].z, img.samples[k].yi);
    }

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"300\" "
          "viewBox=\"0 0 800 300\">\n";
    if (!title.empty()) {
        os << "  <title>" << title << "</title>\n";
    }
    os << "  <rect width=\"800\" height=\"300\" fill=\"white\"/>\n";
    if (y_lo < 0.0 && y_hi > 0.0) {
        os << "  <line x1=\"0\" y1=\"" << py(0.0) << "\" x2=\"800\" y2=\"" << py(0.0)
           << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
    }
    if (!img.empty()) {
        os << "  <polygon points=\"" << ribbon.str()
           << "\" fill=\"#303030\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
        os << "  <polyline points=\"" << upper.str()
           << "\" fill=\"none\" stroke=\"#b22222\" stroke-width=\"1.5\"/>\n";
        os << "  <polyline points=\"" << lower.str()
           << "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"/>\n";
    }
    os << "</svg>\n";
}

void write_report(std::ostream& os, const InverseReport& report) {
    os << "n=" << (report.n ? std::to_string(*report.n) : std::string("CIRCLE")) << '\n';
    os << "n_real=" << format_double(report.n_real) << '\n';
    os << "parity=" << to_string(report.parity) << '\n';
    os << "m=" << format_double(report.apothem_m) << '\n';
    os << "M=" << format_double(report.circumradius_M) << '\n';
    os << "midline=" << format_double(report.midline) << '\n';
    os << "omega_over_v="
       << (report.omega_over_v ? format_double(*report.omega_over_v) : std::string("nan"))
       << '\n';
    os << "residual=" << format_double(report.residual) << '\n';
    os << "warnings=";
    for (std::size_t k = 0; k < report.warnings.size(); ++k) {
        os << (k ? ";" : "") << report.warnings[k];
    }
    os << '\n';
}

}  // namespace kinescope::io
