#include <doctest.h>

#include <robin/io.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using robin::Complex;

TEST_CASE("complex parsing")
{
    CHECK(robin::parse_complex("2") == Complex(2.0, 0.0));
    CHECK(robin::parse_complex("-0.5") == Complex(-0.5, 0.0));
    CHECK(robin::parse_complex("1.5i") == Complex(0.0, 1.5));
    CHECK(robin::parse_complex("-1.5i") == Complex(0.0, -1.5));
    CHECK(robin::parse_complex("0+1.618i") == Complex(0.0, 1.618));
    CHECK(robin::parse_complex("1-0.5i") == Complex(1.0, -0.5));
    CHECK(robin::parse_complex("i") == Complex(0.0, 1.0));
    CHECK(robin::parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(robin::parse_complex("1+i") == Complex(1.0, 1.0));
    CHECK(robin::parse_complex(" 2.5 + 0.25i ") == Complex(2.5, 0.25));
    CHECK(robin::parse_complex("1e-3+2e2i") == Complex(1e-3, 2e2));

    CHECK_THROWS_AS(robin::parse_complex(""), robin::ConfigError);
    CHECK_THROWS_AS(robin::parse_complex("abc"), robin::ConfigError);
    CHECK_THROWS_AS(robin::parse_complex("1+2"), robin::ConfigError);
    CHECK_THROWS_AS(robin::parse_complex("1i+2"), robin::ConfigError);
}

TEST_CASE("complex formatting round trips")
{
    for (Complex z : {Complex(2.0, 0.0), Complex(0.0, 1.5), Complex(-1.25, 0.75), Complex(0.5, -2.0)}) {
        CHECK(robin::parse_complex(robin::fmt_complex(z)) == z);
    }
    CHECK(robin::fmt_g(0.1) == "0.1");
    CHECK(robin::fmt_g(-2.0) == "-2");
}

TEST_CASE("curve csv structure")
{
    robin::EnclosureCurve curve;
    curve.a = Complex(2.0, 0.0);
    curve.q_budget = 0.5;
    curve.thresholds = {Complex(-2.0, 0.0), Complex(2.0, 0.0)};
    curve.pole = Complex(2.5, 0.0);
    curve.polylines = {{Complex(1.0, 2.0), Complex(1.5, 2.5)}, {Complex(-1.0, 0.25)}};

    std::ostringstream out;
    robin::write_curve_csv(out, curve);
    const std::string text = out.str();
    CHECK(text.find("# threshold,-2,0\n") != std::string::npos);
    CHECK(text.find("# pole,2.5,0\n") != std::string::npos);
    CHECK(text.find("1,2\n1.5,2.5\n\n-1,0.25\n") != std::string::npos);

    std::ostringstream again;
    robin::write_curve_csv(again, curve);
    CHECK(again.str() == text);
}

TEST_CASE("svg structure")
{
    robin::EnclosureCurve curve;
    curve.a = Complex(2.0, 0.0);
    curve.q_budget = 0.5;
    curve.thresholds = {Complex(-2.0, 0.0), Complex(2.0, 0.0)};
    curve.pole = Complex(2.5, 0.0);
    curve.polylines = {{Complex(2.2, -0.3), Complex(2.8, 0.0), Complex(2.2, 0.3)}};

    std::ostringstream out;
    robin::write_curves_svg(out, {curve});
    const std::string svg = out.str();
    CHECK(svg.find("class=\"band\"") != std::string::npos);
    CHECK(svg.find("class=\"q-curves\" data-q=\"0.5\"") != std::string::npos);
    CHECK(svg.find("class=\"pole\"") != std::string::npos);
    CHECK(svg.find("fill=\"red\"") != std::string::npos);
    CHECK(svg.find("<path d=\"M") != std::string::npos);
}

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("cli outputs are byte stable across runs")
{
    const char* cli = std::getenv("ROBIN_SPECTRA_CLI");
    if (cli == nullptr) {
        MESSAGE("ROBIN_SPECTRA_CLI not set; skipping CLI determinism test");
        return;
    }
    const std::string base = "/tmp/robin_cli_det";
    REQUIRE(std::system(("rm -rf " + base + " && mkdir -p " + base + "/a " + base + "/b").c_str()) == 0);
    for (const char* sub : {"a", "b"}) {
        const std::string cmd = std::string(cli) + " enclosure --a 0.5 --q 0.75 --grid 128 --out-dir "
                              + base + "/" + sub;
        REQUIRE(std::system(cmd.c_str()) == 0);
    }
    CHECK(slurp(base + "/a/enclosure_a0.5_Q0.75.csv") == slurp(base + "/b/enclosure_a0.5_Q0.75.csv"));
    CHECK(slurp(base + "/a/enclosure_a0.5_Q0.75.svg") == slurp(base + "/b/enclosure_a0.5_Q0.75.svg"));

    // Thread count must not change the bytes.
    REQUIRE(std::system((std::string(cli)
                         + " enclosure --a 0.5 --q 0.75 --grid 128 --threads 3 --out-dir " + base)
                            .c_str()) == 0);
    CHECK(slurp(base + "/enclosure_a0.5_Q0.75.csv") == slurp(base + "/a/enclosure_a0.5_Q0.75.csv"));

    // Seeded sampling is reproducible too.
    const std::string idcmd = std::string(cli) + " hardy identity --q 0.3 --samples 20 --seed 7 --out ";
    REQUIRE(std::system((idcmd + base + "/a/id.json").c_str()) == 0);
    REQUIRE(std::system((idcmd + base + "/b/id.json").c_str()) == 0);
    CHECK(slurp(base + "/a/id.json") == slurp(base + "/b/id.json"));
}

TEST_CASE("cli exit codes")
{
    const char* cli = std::getenv("ROBIN_SPECTRA_CLI");
    if (cli == nullptr) {
        return;
    }
    auto code = [&](const std::string& args) {
        const int status = std::system((std::string(cli) + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(code("no-such-command") == 2);
    CHECK(code("stability --a 0 --potential /does/not/exist.json") == 2);
    CHECK(code("stability --a 0.5+2i --potential /does/not/exist.json") == 2);
    CHECK(code("witness --a 0 --Q 1 --z 3") == 3);           // real target
    CHECK(code("witness --a 0 --Q 1 --z 4+4i") == 3);        // off the boundary
    CHECK(code("hardy weights --kind power --q 0.7") == 2);  // q out of range
    CHECK(code("green --a 2 --z 2.5") == 3);                 // resolvent pole
    CHECK(code("hardy critical-neumann --n 5") == 0);
}
