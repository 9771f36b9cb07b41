#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "kinescope/angle.hpp"
#include "kinescope/direct.hpp"
#include "kinescope/errors.hpp"
#include "kinescope/geometry.hpp"
#include "kinescope/image_io.hpp"
#include "kinescope/inverse.hpp"
#include "kinescope/motion.hpp"

namespace kinescope::cli {

namespace {

struct ShapeOptions {
    std::string kind;
    double radius = 1.0;
    double a = 2.0;
    double b = 1.0;
    int sides = 4;
    std::optional<double> side_length;
    std::optional<double> circumradius;
    std::string vertices_file;
    std::string polar_file;
    std::string pole = "center";
    std::optional<double> pole_x;
    std::optional<double> pole_y;
};

struct MotionOptions {
    double omega = 1.0;
    double speed = 1.0;
    double theta0 = 0.0;
    std::string motion_file;
    double periods = 1.0;
    std::optional<double> duration;
    std::optional<int> samples;
};

struct DirectOptions {
    ShapeOptions shape;
    MotionOptions motion;
    std::string out;
    std::string svg;
};

struct InverseCliOptions {
    std::string in;
    std::string report;
    int n_max = 64;
};

struct RenderOptions {
    std::string in;
    std::string svg;
};

struct CheckOptions {
    std::string which = "all";
    double a = 2.0;
    double b = 1.0;
    double radius = 1.0;
    double side = 1.0;
    int n_theta = 1000;
};

// Configuration problem; the message names the offending flag.
class ConfigError : public Error {
public:
    using Error::Error;
};

std::ifstream open_input(const std::string& path, const std::string& flag) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(flag + ": cannot open '" + path + "'");
    }
    return in;
}

std::ofstream open_output(const std::string& path, const std::string& flag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError(flag + ": cannot write '" + path + "'");
    }
    return out;
}

// Whitespace-separated numeric rows; '#' starts a comment.
std::vector<std::vector<double>> read_table(std::istream& in, std::size_t columns,
                                            const std::string& what) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) {
            row.push_back(v);
        }
        if (!ls.eof()) {
            throw ParseError(what + " line " + std::to_string(number) + ": not a number");
        }
        if (row.empty()) {
            continue;
        }
        if (row.size() != columns) {
            throw ParseError(what + " line " + std::to_string(number) + ": expected " +
                             std::to_string(columns) + " values");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// `[omega]` / `[speed]` sections of `t value` rows.
std::map<std::string, SpeedProfile> read_motion_file(std::istream& in) {
    std::map<std::string, std::vector<SpeedProfile::Segment>> sections;
    std::string current;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) {
            continue;
        }
        if (first.front() == '[') {
            if (first != "[omega]" && first != "[speed]") {
                throw ParseError("motion file line " + std::to_string(number) +
                                 ": unknown section " + first);
            }
            current = first.substr(1, first.size() - 2);
            continue;
        }
        if (current.empty()) {
            throw ParseError("motion file line " + std::to_string(number) +
                             ": row before any [omega] or [speed] section");
        }
        std::istringstream row(line);
        double t, value;
        std::string extra;
        if (!(row >> t >> value) || (row >> extra)) {
            throw ParseError("motion file line " + std::to_string(number) +
                             ": expected 't value'");
        }
        sections[current].push_back({t, value});
    }
    std::map<std::string, SpeedProfile> out;
    for (auto& [name, segs] : sections) {
        out.emplace(name, SpeedProfile::piecewise(std::move(segs)));
    }
    return out;
}

Shape build_shape(const ShapeOptions& o) {
    Shape shape = [&]() -> Shape {
        if (o.kind == "circle") {
            if (!(o.radius > 0.0)) {
                throw ConfigError("--radius must be positive");
            }
            return SmoothContour::circle(o.radius);
        }
        if (o.kind == "ellipse") {
            if (!(o.b > 0.0) || !(o.a >= o.b)) {
                throw ConfigError("--a and --b must satisfy a >= b > 0");
            }
            return SmoothContour::ellipse(o.a, o.b);
        }
        if (o.kind == "ngon") {
            if (o.sides < 3) {
                throw ConfigError("--sides must be at least 3");
            }
            double r = 1.0;
            if (o.side_length && o.circumradius) {
                throw ConfigError("--side-length and --circumradius are exclusive");
            }
            if (o.side_length) {
                r = *o.side_length / (2.0 * std::sin(kPi / o.sides));
            } else if (o.circumradius) {
                r = *o.circumradius;
            }
            if (!(r > 0.0)) {
                throw ConfigError("--side-length/--circumradius must be positive");
            }
            return regular_ngon(o.sides, r);
        }
        if (o.kind == "polygon") {
            if (o.vertices_file.empty()) {
                throw ConfigError("--vertices is required for --shape polygon");
            }
            auto in = open_input(o.vertices_file, "--vertices");
            std::vector<Vec2> v;
            for (const auto& row : read_table(in, 2, "vertices")) {
                v.push_back({row[0], row[1]});
            }
            return ConvexPolygon(std::move(v));
        }
        if (o.kind == "polar") {
            if (o.polar_file.empty()) {
                throw ConfigError("--polar is required for --shape polar");
            }
            auto in = open_input(o.polar_file, "--polar");
            std::vector<double> beta, r;
            for (const auto& row : read_table(in, 2, "polar table")) {
                beta.push_back(row[0]);
                r.push_back(row[1]);
            }
            return SmoothContour::sampled_polar(beta, r);
        }
        throw ConfigError("--shape must be one of circle, ellipse, ngon, polygon, polar");
    }();

    Vec2 offset{};
    if (o.pole == "rim") {
        if (const auto* sc = std::get_if<SmoothContour>(&shape)) {
            // pole on the contour at beta = pi
            offset = -contour_point(*sc, kPi);
        } else {
            offset = -std::get<ConvexPolygon>(shape).vertices()[0];
        }
    } else if (o.pole != "center") {
        throw ConfigError("--pole must be 'center' or 'rim'");
    }
    if (o.pole_x) {
        offset.x = *o.pole_x;
    }
    if (o.pole_y) {
        offset.y = *o.pole_y;
    }
    return with_pole_offset(shape, offset);
}

MotionProfile build_motion(const MotionOptions& o) {
    SpeedProfile omega = SpeedProfile::constant(o.omega);
    SpeedProfile speed = SpeedProfile::constant(o.speed);
    if (!o.motion_file.empty()) {
        auto in = open_input(o.motion_file, "--motion");
        auto profiles = read_motion_file(in);
        if (auto it = profiles.find("omega"); it != profiles.end()) {
            omega = it->second;
        }
        if (auto it = profiles.find("speed"); it != profiles.end()) {
            speed = it->second;
        }
    }
    if (!(speed.min_value() > 0.0)) {
        throw ConfigError("--speed (or [speed] table) must be strictly positive");
    }
    return MotionProfile(omega, speed, o.theta0);
}

TimeGrid build_grid(const MotionOptions& o, const MotionProfile& m) {
    TimeGrid g;
    double turns = 1.0;
    if (o.duration) {
        if (!(*o.duration > 0.0)) {
            throw ConfigError("--duration must be positive");
        }
        g.duration = *o.duration;
        if (m.omega().is_constant() && m.omega().value_at(0.0) != 0.0) {
            turns = g.duration * std::abs(m.omega().value_at(0.0)) / kTwoPi;
        }
    } else {
        if (!(o.periods > 0.0)) {
            throw ConfigError("--periods must be positive");
        }
        if (!m.omega().is_constant() || m.omega().value_at(0.0) == 0.0) {
            throw ConfigError("--duration is required unless --omega is constant and nonzero");
        }
        turns = o.periods;
        g = default_grid(m, turns);
    }
    g.samples = o.samples.value_or(std::max(2, static_cast<int>(std::lround(1024.0 * turns))));
    if (g.samples < 2) {
        throw ConfigError("--samples must be at least 2");
    }
    return g;
}

int cmd_direct(const DirectOptions& o, std::ostream& out) {
    const auto shape = build_shape(o.shape);
    const auto motion = build_motion(o.motion);
    const auto grid = build_grid(o.motion, motion);
    const auto img = trace(shape, motion, grid);

    {
        auto csv = open_output(o.out, "--out");
        io::write_csv(csv, img);
    }
    if (!o.svg.empty()) {
        auto svg = open_output(o.svg, "--svg");
        io::write_svg(svg, img, describe(shape));
    }
    out << "wrote " << img.size() << " samples to " << o.out << '\n';
    return kOk;
}

KinematicImage load_image(const std::string& path) {
    auto in = open_input(path, "--in");
    return io::read_csv(in);
}

int cmd_inverse(const InverseCliOptions& o, std::ostream& out) {
    if (o.n_max < 3) {
        throw ConfigError("--n-max must be at least 3");
    }
    const auto img = load_image(o.in);
    InverseOptions opts;
    opts.n_max = o.n_max;
    const auto report = identify(img, opts);
    if (!o.report.empty()) {
        auto file = open_output(o.report, "--report");
        io::write_report(file, report);
    }
    if (report.n) {
        out << "n=" << *report.n << '\n';
    } else {
        out << "CIRCLE\n";
    }
    return kOk;
}

int cmd_render(const RenderOptions& o, std::ostream& out) {
    const auto img = load_image(o.in);
    auto svg = open_output(o.svg, "--svg");
    io::write_svg(svg, img, o.in);
    out << "wrote " << o.svg << '\n';
    return kOk;
}

// --- check ------------------------------------------------------------------

struct CheckResult {
    std::string name;
    double value;
    double tolerance;
    bool pass() const { return value <= tolerance; }
};

std::vector<Shape> invariance_shapes(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Shape> shapes;
    for (int i = 0; i < 10; ++i) {
        const double a = 0.5 + 2.0 * unit(rng);
        shapes.push_back(SmoothContour::ellipse(a, a * (0.2 + 0.8 * unit(rng))));
        shapes.push_back(regular_ngon(3 + i, 0.5 + unit(rng)));
    }
    return shapes;
}

double pole_invariance_error(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (const auto& shape : invariance_shapes(rng)) {
        const double size = std::visit([](const auto& s) { return s.extent(); }, shape);
        const auto moved = with_pole_offset(shape, {10.0 * size * unit(rng), 10.0 * size * unit(rng)});
        for (int k = 0; k < 256; ++k) {
            const double theta = kTwoPi * k / 256.0;
            worst = std::max(worst, std::abs(height(moved, theta) - height(shape, theta)));
        }
    }
    return worst;
}

double reflection_error(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (const auto& shape : invariance_shapes(rng)) {
        const auto moved = with_pole_offset(shape, {unit(rng), unit(rng)});
        for (int k = 0; k < 256; ++k) {
            const double theta = kTwoPi * k / 256.0;
            worst = std::max(worst, std::abs(support_heights(moved, theta).yi +
                                             support_heights(moved, theta + kPi).ys));
        }
    }
    return worst;
}

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> known = {
        "all", "circle", "circle-rim", "ellipse", "square", "triangle", "pole-invariance",
        "reflection"};
    if (std::find(known.begin(), known.end(), o.which) == known.end()) {
        throw ConfigError("--case must be one of all, circle, circle-rim, ellipse, square, "
                          "triangle, pole-invariance, reflection");
    }
    if (o.n_theta < 1) {
        throw ConfigError("--n-theta must be positive");
    }
    const auto wanted = [&](const std::string& name) { return o.which == "all" || o.which == name; };
    const auto oracle = [&](const ClosedFormCase& c) {
        return oracle_check(shape_for(c), c, o.n_theta);
    };

    std::vector<CheckResult> results;
    if (wanted("circle")) {
        results.push_back({"circle_center", oracle(cases::CircleCenter{o.radius}), 1e-12});
    }
    if (wanted("circle-rim")) {
        results.push_back({"circle_rim", oracle(cases::CircleRim{o.radius}), 1e-9});
    }
    if (wanted("ellipse")) {
        if (!(o.b > 0.0) || !(o.a >= o.b)) {
            throw ConfigError("--a and --b must satisfy a >= b > 0");
        }
        results.push_back({"ellipse_center", oracle(cases::EllipseCenter{o.a, o.b}), 1e-8});
    }
    if (wanted("square")) {
        results.push_back({"square_center", oracle(cases::SquareCenter{o.side}), 1e-12});
    }
    if (wanted("triangle")) {
        results.push_back({"triangle_center", oracle(cases::TriangleCenter{o.side}), 1e-12});
    }
    if (wanted("pole-invariance")) {
        results.push_back({"pole_invariance", pole_invariance_error(20240601), 1e-9});
    }
    if (wanted("reflection")) {
        results.push_back({"reflection", reflection_error(20240602), 1e-10});
    }

    out << std::left << std::setw(18) << "check" << std::setw(26) << "max_error"
        << std::setw(12) << "tolerance" << "result\n";
    const CheckResult* first_failure = nullptr;
    for (const auto& r : results) {
        out << std::setw(18) << r.name << std::setw(26) << io::format_double(r.value)
            << std::setw(12) << r.tolerance << (r.pass() ? "PASS" : "FAIL") << '\n';
        if (!r.pass() && !first_failure) {
            first_failure = &r;
        }
    }
    if (first_failure) {
        err << "check failed: " << first_failure->name << '\n';
        return kCheckFailed;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kinematic images of rotating plane shapes: simulate and identify"};
    app.require_subcommand(1);

    DirectOptions direct;
    auto* d = app.add_subcommand("direct", "trace the kinematic image of a shape");
    d->add_option("--shape", direct.shape.kind, "circle | ellipse | ngon | polygon | polar")
        ->required();
    d->add_option("--radius", direct.shape.radius, "circle radius");
    d->add_option("--a", direct.shape.a, "ellipse semi-axis along x");
    d->add_option("--b", direct.shape.b, "ellipse semi-axis along y");
    d->add_option("--sides", direct.shape.sides, "regular polygon side count");
    d->add_option("--side-length", direct.shape.side_length, "regular polygon side length");
    d->add_option("--circumradius", direct.shape.circumradius, "regular polygon circumradius");
    d->add_option("--vertices", direct.shape.vertices_file, "file of 'x y' rows (CCW)");
    d->add_option("--polar", direct.shape.polar_file, "file of 'beta r' rows");
    d->add_option("--pole", direct.shape.pole, "center | rim");
    d->add_option("--pole-x", direct.shape.pole_x, "x of the pole-to-origin offset");
    d->add_option("--pole-y", direct.shape.pole_y, "y of the pole-to-origin offset");
    d->add_option("--omega", direct.motion.omega, "angular speed (rad/time)");
    d->add_option("--speed", direct.motion.speed, "film speed (length/time)");
    d->add_option("--theta0", direct.motion.theta0, "initial angle");
    d->add_option("--motion", direct.motion.motion_file,
                  "piecewise [omega]/[speed] tables of 't value' rows");
    d->add_option("--periods", direct.motion.periods, "full turns to record");
    d->add_option("--duration", direct.motion.duration, "recording time");
    d->add_option("--samples", direct.motion.samples, "sample count");
    d->add_option("--out", direct.out, "output CSV")->required();
    d->add_option("--svg", direct.svg, "optional SVG plot");

    InverseCliOptions inverse;
    auto* inv = app.add_subcommand("inverse", "identify a regular polygon from a trace");
    inv->add_option("--in", inverse.in, "input CSV")->required();
    inv->add_option("--report", inverse.report, "key=value report file");
    inv->add_option("--n-max", inverse.n_max, "largest resolvable side count");

    RenderOptions render;
    auto* ren = app.add_subcommand("render", "plot a trace CSV as SVG");
    ren->add_option("--in", render.in, "input CSV")->required();
    ren->add_option("--svg", render.svg, "output SVG")->required();

    CheckOptions check;
    auto* chk = app.add_subcommand("check", "run closed-form and invariant checks");
    chk->add_option("--case", check.which, "all | circle | circle-rim | ellipse | square | "
                                           "triangle | pole-invariance | reflection");
    chk->add_option("--a", check.a, "ellipse semi-axis along x");
    chk->add_option("--b", check.b, "ellipse semi-axis along y");
    chk->add_option("--radius", check.radius, "circle radius");
    chk->add_option("--side", check.side, "square/triangle side");
    chk->add_option("--n-theta", check.n_theta, "angles per oracle comparison");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*d) {
            return cmd_direct(direct, out);
        }
        if (*inv) {
            return cmd_inverse(inverse, out);
        }
        if (*ren) {
            return cmd_render(render, out);
        }
        return cmd_check(check, out, err);
    } catch (const ConvexityViolation& e) {
        err << "geometry error: " << e.what() << '\n';
        return kGeometry;
    } catch (const DegenerateImage& e) {
        err << "cannot identify: " << e.what() << '\n';
        return kInsufficient;
    } catch (const InsufficientData& e) {
        err << "cannot identify: " << e.what() << '\n';
        return kInsufficient;
    } catch (const ConfigError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "malformed input: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace kinescope::cli
