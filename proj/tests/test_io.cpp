#include <doctest.h>

#include <sstream>

#include "rightratio/io.hpp"

using namespace rr;

TEST_CASE("double formatting is locale-free and round-trips") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0).find('.') != std::string::npos);
    CHECK(format_double(1.0 / 3.0).find(',') == std::string::npos);
    double v = 0.12345678901234567;
    CHECK(std::stod(format_double(v)) == v);
    v = 1e-17;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("ratio CSV layout") {
    SurfaceSpec plane = SurfaceSpec::plane();
    RatioCurve curve = ratio_curve(plane, {0, 0}, 0.0, {0.5, 1.0, 2.0});
    std::ostringstream out;
    write_ratio_csv(out, curve);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "r,r_over_scale,ratio,chord,converged,K_analytic");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        CHECK(line.back() == '0'); // plane: K_analytic column is 0
    }
    CHECK(rows == 3);
}

TEST_CASE("CSV output is deterministic") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    auto grid = log_grid(0.01, 0.5, 12);
    std::ostringstream a, b;
    write_ratio_csv(a, ratio_curve(torus, {kPi, 0.0}, 0.0, grid));
    write_ratio_csv(b, ratio_curve(torus, {kPi, 0.0}, 0.0, grid));
    CHECK(a.str() == b.str());
}

TEST_CASE("SVG plot contains axes, polylines and the reference rule") {
    SvgSeries s;
    s.label = "demo";
    s.x = {0.0, 1.0, 2.0};
    s.y = {0.4, 0.5, 0.6};
    std::ostringstream out;
    write_svg_plot(out, {s, s}, 0.5, "r", "ratio");
    std::string svg = out.str();
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 5);
    std::size_t first = svg.find("<polyline");
    REQUIRE(first != std::string::npos);
    CHECK(svg.find("<polyline", first + 1) != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
}
