#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "kinescope/image_io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace kinescope;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("kinescope_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                   ->current_test_info()
                                                   ->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        out_.str({});
        err_.str({});
        return cli::run(args, out_, err_);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    KinematicImage load(const std::string& p) const {
        std::ifstream in(p);
        return io::read_csv(in);
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, DirectCircleRimWave) {
    ASSERT_EQ(run({"direct", "--shape", "circle", "--radius", "1", "--pole", "rim", "--omega",
                   "1", "--speed", "1", "--periods", "2", "--samples", "2048", "--out",
                   path("wave.csv"), "--svg", path("wave.svg")}),
              0)
        << err_.str();
    const auto img = load(path("wave.csv"));
    ASSERT_EQ(img.size(), 2048u);
    for (const auto& s : img.samples) {
        EXPECT_NEAR(s.ys, 1.0 + std::sin(s.z), 1e-9);
        EXPECT_NEAR(s.yi, s.ys - 2.0, 1e-9);
    }
    EXPECT_NE(slurp(path("wave.svg")).find("<svg"), std::string::npos);
}

TEST_F(CliTest, DirectEllipse) {
    ASSERT_EQ(run({"direct", "--shape", "ellipse", "--a", "2", "--b", "1", "--out",
                   path("e.csv")}),
              0);
    const auto img = load(path("e.csv"));
    EXPECT_EQ(img.size(), 1024u);
    for (const auto& s : img.samples) {
        EXPECT_NEAR(s.ys, std::sqrt(4 * std::sin(s.z) * std::sin(s.z) +
                                    std::cos(s.z) * std::cos(s.z)),
                    1e-9);
    }
}

TEST_F(CliTest, DirectThenInverseRecoversSideCount) {
    for (int n = 3; n <= 12; ++n) {
        const auto csv = path("ngon" + std::to_string(n) + ".csv");
        ASSERT_EQ(run({"direct", "--shape", "ngon", "--sides", std::to_string(n),
                       "--side-length", "1", "--out", csv}),
                  0);
        ASSERT_EQ(run({"inverse", "--in", csv}), 0) << err_.str();
        EXPECT_EQ(out_.str(), "n=" + std::to_string(n) + "\n");
    }
}

TEST_F(CliTest, InverseWritesReport) {
    ASSERT_EQ(run({"direct", "--shape", "ngon", "--sides", "3", "--side-length", "1",
                   "--samples", "4096", "--out", path("t.csv")}),
              0);
    ASSERT_EQ(run({"inverse", "--in", path("t.csv"), "--report", path("t.txt")}), 0);
    EXPECT_EQ(out_.str(), "n=3\n");
    const auto report = slurp(path("t.txt"));
    std::istringstream lines(report);
    std::vector<std::string> keys;
    for (std::string line; std::getline(lines, line);) {
        keys.push_back(line.substr(0, line.find('=')));
    }
    const std::vector<std::string> expected = {"n",       "n_real",       "parity",
                                               "m",       "M",            "midline",
                                               "omega_over_v", "residual", "warnings"};
    EXPECT_EQ(keys, expected);
    EXPECT_NE(report.find("parity=odd\n"), std::string::npos);
}

TEST_F(CliTest, StripIsACircle) {
    ASSERT_EQ(run({"direct", "--shape", "circle", "--radius", "2", "--out", path("c.csv")}), 0);
    ASSERT_EQ(run({"inverse", "--in", path("c.csv")}), 0);
    EXPECT_EQ(out_.str(), "CIRCLE\n");
}

TEST_F(CliTest, OutputsAreDeterministic) {
    const std::vector<std::string> args = {"direct", "--shape", "ngon", "--sides", "5",
                                           "--circumradius", "1.7", "--omega", "2", "--speed",
                                           "0.5", "--periods", "1.5"};
    auto first = args;
    first.insert(first.end(), {"--out", path("a.csv"), "--svg", path("a.svg")});
    auto second = args;
    second.insert(second.end(), {"--out", path("b.csv"), "--svg", path("b.svg")});
    ASSERT_EQ(run(first), 0);
    ASSERT_EQ(run(second), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(slurp(path("a.svg")), slurp(path("b.svg")));

    ASSERT_EQ(run({"inverse", "--in", path("a.csv"), "--report", path("a.txt")}), 0);
    ASSERT_EQ(run({"inverse", "--in", path("a.csv"), "--report", path("b.txt")}), 0);
    EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
}

TEST_F(CliTest, ReentrantPolarContourExitsWithGeometryError) {
    const auto [beta, r] = kinescope::testing::reentrant_polar_table();
    {
        std::ofstream f(path("lobe.txt"));
        for (std::size_t k = 0; k < beta.size(); ++k) {
            f << io::format_double(beta[k]) << ' ' << io::format_double(r[k]) << '\n';
        }
    }
    EXPECT_EQ(run({"direct", "--shape", "polar", "--polar", path("lobe.txt"), "--out",
                   path("x.csv")}),
              3);
    EXPECT_NE(err_.str().find("geometry"), std::string::npos);
}

TEST_F(CliTest, ConvexPolarAndPolygonFiles) {
    {
        std::ofstream f(path("round.txt"));
        f << "# beta r\n";
        for (int k = 0; k < 32; ++k) {
            const double b = 2.0 * M_PI * k / 32.0;
            f << b << ' ' << 1.0 + 0.05 * std::cos(2 * b) << '\n';
        }
        std::ofstream p(path("poly.txt"));
        p << "0 0\n2 0\n2 1\n0 1\n";
    }
    EXPECT_EQ(run({"direct", "--shape", "polar", "--polar", path("round.txt"), "--out",
                   path("r.csv")}),
              0)
        << err_.str();
    EXPECT_EQ(run({"direct", "--shape", "polygon", "--vertices", path("poly.txt"), "--pole-x",
                   "-1", "--pole-y", "-0.5", "--out", path("p.csv")}),
              0)
        << err_.str();
    const auto img = load(path("p.csv"));
    EXPECT_NEAR(img.samples.front().ys, 0.5, 1e-12);
    EXPECT_NEAR(img.samples.front().yi, -0.5, 1e-12);

    {
        std::ofstream p(path("l.txt"));
        p << "0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n";
    }
    EXPECT_EQ(run({"direct", "--shape", "polygon", "--vertices", path("l.txt"), "--out",
                   path("l.csv")}),
              3);
}

TEST_F(CliTest, PiecewiseMotionFile) {
    {
        std::ofstream f(path("motion.txt"));
        f << "[omega]\n0 1\n1 2\n[speed]\n0 1\n";
    }
    ASSERT_EQ(run({"direct", "--shape", "ellipse", "--motion", path("motion.txt"), "--duration",
                   "2", "--samples", "3", "--out", path("m.csv")}),
              0)
        << err_.str();
    const auto img = load(path("m.csv"));
    ASSERT_EQ(img.size(), 3u);
    // theta(2) = 3, so ys = sqrt(4 sin^2 3 + cos^2 3)
    EXPECT_NEAR(img.samples[2].ys,
                std::sqrt(4 * std::sin(3.0) * std::sin(3.0) + std::cos(3.0) * std::cos(3.0)), 1e-12);
    EXPECT_DOUBLE_EQ(img.samples[2].z, 2.0);

    // piecewise omega without an explicit duration is a configuration error
    EXPECT_EQ(run({"direct", "--shape", "ellipse", "--motion", path("motion.txt"), "--out",
                   path("m2.csv")}),
              2);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}), 2);
    EXPECT_EQ(run({"direct", "--shape", "circle"}), 2);
    EXPECT_EQ(run({"direct", "--shape", "blob", "--out", path("x.csv")}), 2);
    EXPECT_NE(err_.str().find("--shape"), std::string::npos);
    EXPECT_EQ(run({"direct", "--shape", "circle", "--radius", "-1", "--out", path("x.csv")}), 2);
    EXPECT_NE(err_.str().find("--radius"), std::string::npos);
    EXPECT_EQ(run({"direct", "--shape", "circle", "--speed", "0", "--out", path("x.csv")}), 2);
    EXPECT_NE(err_.str().find("--speed"), std::string::npos);
    EXPECT_EQ(run({"direct", "--shape", "ellipse", "--a", "1", "--b", "2", "--out",
                   path("x.csv")}),
              2);
    EXPECT_EQ(run({"inverse", "--in", path("missing.csv")}), 2);
    EXPECT_EQ(run({"check", "--case", "nonsense"}), 2);
    EXPECT_EQ(run({"--help"}), 0);
}

TEST_F(CliTest, InverseDataErrors) {
    {
        std::ofstream f(path("bad.csv"));
        f << "z,ys,yi\n0,1\n";
    }
    EXPECT_EQ(run({"inverse", "--in", path("bad.csv")}), 2);
    {
        std::ofstream f(path("flat.csv"));
        f << "z,ys,yi\n";
        for (int k = 0; k < 20; ++k) f << k << ",0,0\n";
    }
    EXPECT_EQ(run({"inverse", "--in", path("flat.csv")}), 4);
    {
        std::ofstream f(path("short.csv"));
        f << "z,ys,yi\n0,1,-1\n1,1,-1\n";
    }
    EXPECT_EQ(run({"inverse", "--in", path("short.csv")}), 4);
    // a third of a triangle turn: a polygon, but no period to measure
    ASSERT_EQ(run({"direct", "--shape", "ngon", "--sides", "3", "--periods", "0.3", "--out",
                   path("part.csv")}),
              0);
    EXPECT_EQ(run({"inverse", "--in", path("part.csv")}), 4);
}

TEST_F(CliTest, RenderAndCheck) {
    ASSERT_EQ(run({"direct", "--shape", "ngon", "--sides", "4", "--out", path("s.csv")}), 0);
    ASSERT_EQ(run({"render", "--in", path("s.csv"), "--svg", path("s.svg")}), 0);
    EXPECT_NE(slurp(path("s.svg")).find("viewBox=\"0 0 800 300\""), std::string::npos);

    EXPECT_EQ(run({"check"}), 0) << out_.str() << err_.str();
    EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
    EXPECT_EQ(run({"check", "--case", "ellipse", "--a", "2", "--b", "1"}), 0);
    EXPECT_NE(out_.str().find("ellipse_center"), std::string::npos);
    EXPECT_EQ(run({"check", "--case", "pole-invariance"}), 0);
    EXPECT_NE(out_.str().find("pole_invariance"), std::string::npos);
}
