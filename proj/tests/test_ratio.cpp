#include <doctest.h>

#include <cmath>

#include "rightratio/ratio.hpp"

using namespace rr;

namespace {

// Spherical law of cosines with a right angle at the vertex:
// |DE| = R * arccos(cos^2(r/R)).
double sphere_right_ratio_oracle(double radius, double r) {
    double c = std::cos(r / radius);
    double chord = radius * std::acos(c * c);
    return chord * chord / (4.0 * r * r);
}

} // namespace

TEST_CASE("angle distance ratio endpoints: ray 0, straight line 1") {
    SurfaceSpec plane = SurfaceSpec::plane();
    ChartPoint p{0.4, -0.7};
    auto frame = orthonormal_frame(plane, p, 0.3);
    TangentVector d1 = frame[0];
    TangentVector neg{p, -d1.du, -d1.dv};

    RatioSample same = angle_distance_ratio(plane, p, d1, d1, 1.0);
    CHECK(same.converged);
    CHECK(same.ratio == doctest::Approx(0.0).epsilon(1e-9));

    RatioSample opposite = angle_distance_ratio(plane, p, d1, neg, 1.0);
    CHECK(opposite.converged);
    CHECK(opposite.ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("plane right ratio is one half") {
    SurfaceSpec plane = SurfaceSpec::plane();
    for (double r : {0.1, 1.0, 10.0}) {
        for (int k = 0; k < 8; ++k) {
            double phi = k * kPi / 4.0;
            RatioSample s = right_ratio(plane, {0.3, 0.8}, phi, r);
            CHECK(s.converged);
            CHECK(std::abs(s.ratio - 0.5) < 1e-7);
        }
    }
}

TEST_CASE("sphere right ratio matches the law-of-cosines oracle") {
    for (double radius : {1.0, 2.0}) {
        SurfaceSpec sphere = SurfaceSpec::sphere(radius);
        ChartPoint p{kPi / 2.0, 0.0};
        for (int i = 0; i < 20; ++i) {
            double rr_over = 0.05 + 0.95 * i / 19.0;
            double r = rr_over * radius;
            RatioSample s = right_ratio(sphere, p, 0.0, r);
            REQUIRE(s.converged);
            double oracle = sphere_right_ratio_oracle(radius, r);
            CHECK(std::abs(s.ratio - oracle) <= 1e-5 * oracle);
        }
    }
}

TEST_CASE("sphere spot values") {
    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    ChartPoint p{kPi / 2.0, 0.0};
    RatioSample s = right_ratio(sphere, p, 0.0, 0.1);
    CHECK(s.ratio == doctest::Approx(0.499167).epsilon(1e-4));
    s = right_ratio(sphere, p, 0.0, 0.5);
    CHECK(s.ratio == doctest::Approx(0.47848).epsilon(1e-4));
}

TEST_CASE("torus inner point sits above one half") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    for (double r : {0.05, 0.1, 0.2}) {
        RatioSample s = right_ratio(torus, {kPi, 0.0}, 0.0, r);
        REQUIRE(s.converged);
        CHECK(s.ratio > 0.5);
    }
}

TEST_CASE("ratio curves on the torus equators reproduce the expected shape") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    auto grid = log_grid(0.01 * 0.5, 0.45 * kPi * 0.5, 50);

    RatioCurve inner = ratio_curve(torus, {kPi, 0.0}, 0.0, grid);
    RatioCurve outer = ratio_curve(torus, {0.0, 0.0}, 0.0, grid);
    REQUIRE(inner.converged_count() == grid.size());
    REQUIRE(outer.converged_count() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(inner.samples[i].ratio > 0.5);
        CHECK(outer.samples[i].ratio < 0.5);
        if (i > 0) {
            CHECK(inner.samples[i].ratio >= inner.samples[i - 1].ratio - 1e-9);
            CHECK(outer.samples[i].ratio <= outer.samples[i - 1].ratio + 1e-9);
        }
    }
}

TEST_CASE("converged ratios stay in the unit interval") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    auto grid = log_grid(0.01, 1.3, 30);
    for (ChartPoint p : {ChartPoint{kPi, 0.0}, ChartPoint{0.0, 0.0},
                         ChartPoint{kPi / 2.0, 0.4}}) {
        RatioCurve curve = ratio_curve(torus, p, 0.4, grid);
        for (const auto& s : curve.samples) {
            if (!s.converged) continue;
            CHECK(s.ratio >= 0.0);
            CHECK(s.ratio <= 1.0);
        }
    }
}

TEST_CASE("sign of 1/2 - ratio follows the curvature sign at small r") {
    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    struct Case {
        SurfaceSpec s;
        ChartPoint p;
    };
    for (const auto& [s, p] : {Case{sphere, {kPi / 2.0, 0.0}},
                               Case{torus, {0.0, 0.0}},
                               Case{torus, {kPi, 0.0}}}) {
        double k = gaussian_curvature(s, p);
        double r = 0.1 / std::sqrt(std::abs(k));
        RatioSample sample = right_ratio(s, p, 0.0, r);
        REQUIRE(sample.converged);
        CHECK(((0.5 - sample.ratio > 0.0) == (k > 0.0)));
    }
}

TEST_CASE("frame invariance on plane and sphere") {
    SurfaceSpec plane = SurfaceSpec::plane();
    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    for (double r : {0.2, 0.7}) {
        double base_p = right_ratio(plane, {0, 0}, 0.0, r).ratio;
        double base_s = right_ratio(sphere, {kPi / 2.0, 0.3}, 0.0, r).ratio;
        for (double phi : {0.3, 1.1, 2.8, 4.0}) {
            CHECK(std::abs(right_ratio(plane, {0, 0}, phi, r).ratio - base_p) <= 1e-7);
            CHECK(std::abs(right_ratio(sphere, {kPi / 2.0, 0.3}, phi, r).ratio -
                           base_s) <= 1e-7);
        }
    }
}

TEST_CASE("curvature recovery from the ratio curve") {
    struct Case {
        SurfaceSpec s;
        ChartPoint p;
        double expected;
    };
    const Case cases[] = {
        {SurfaceSpec::sphere(1.0), {kPi / 2.0, 0.0}, 1.0},
        {SurfaceSpec::torus(2.5, 0.5), {kPi, 0.0}, -1.0},
        {SurfaceSpec::torus(2.5, 0.5), {0.0, 0.0}, 2.0 / 3.0},
    };
    for (const auto& c : cases) {
        RatioCurve curve = ratio_curve(c.s, c.p, 0.0, default_fit_grid(c.s, c.p));
        CurvatureEstimate est = estimate_curvature(curve);
        CHECK(std::abs(est.curvature - c.expected) <= 0.02 * std::abs(c.expected));
        CHECK(est.flat_intercept);
        CHECK(std::abs(est.c1) * est.r_max <= 1e-3);
    }

    SurfaceSpec plane = SurfaceSpec::plane();
    RatioCurve flat = ratio_curve(plane, {0, 0}, 0.0, default_fit_grid(plane, {0, 0}));
    CHECK(std::abs(estimate_curvature(flat).curvature) <= 1e-3);
}

TEST_CASE("curvature fit needs five converged samples") {
    SurfaceSpec plane = SurfaceSpec::plane();
    RatioCurve curve = ratio_curve(plane, {0, 0}, 0.0, {0.1, 0.2, 0.3, 0.4});
    CHECK_THROWS_AS(estimate_curvature(curve), DegenerateCurveError);
}

TEST_CASE("flatness test") {
    SurfaceSpec plane = SurfaceSpec::plane();
    RatioCurve flat = ratio_curve(plane, {0, 0}, 0.0, linear_grid(0.1, 2.0, 10));
    FlatnessResult res = flatness_test(flat, 1e-6);
    CHECK(res.flat);

    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    RatioCurve curved =
        ratio_curve(sphere, {kPi / 2.0, 0.0}, 0.0, linear_grid(0.1, 0.5, 9));
    res = flatness_test(curved, 1e-6);
    CHECK_FALSE(res.flat);
    CHECK(res.max_deviation == doctest::Approx(0.0215).epsilon(0.01));

    // cone away from the apex is locally isometric to the plane
    SurfaceSpec cone = SurfaceSpec::cone(0.9);
    RatioCurve conic = ratio_curve(cone, {2.0, 0.0}, 0.0, linear_grid(0.05, 0.4, 8));
    res = flatness_test(conic, 1e-6);
    CHECK(res.flat);
}

TEST_CASE("cone discontinuity probe finds the apex distance") {
    SurfaceSpec cone = SurfaceSpec::cone(std::asin(0.75)); // sector angle 1.5 pi
    auto grid = linear_grid(0.5, 1.5, 101);                // step 0.01 across s0 = 1
    ConeJump jump = cone_discontinuity_probe(cone, {1.0, 0.0}, grid);
    CHECK(std::abs(jump.location - 1.0) <= 0.01);
    CHECK(jump.magnitude > 10.0 * jump.background);
    CHECK(jump.magnitude > 1e-3);

    // plane control: no jump anywhere
    ConeJump control = cone_discontinuity_probe(SurfaceSpec::plane(), {1.0, 0.0}, grid);
    CHECK(control.magnitude < 1e-9);
}

TEST_CASE("cone probe rejects a grid that misses the apex distance") {
    SurfaceSpec cone = SurfaceSpec::cone(std::asin(0.75));
    CHECK_THROWS_AS(
        cone_discontinuity_probe(cone, {1.0, 0.0}, linear_grid(0.1, 0.5, 41)),
        std::invalid_argument);
}

TEST_CASE("grid helpers") {
    auto lin = linear_grid(1.0, 2.0, 5);
    REQUIRE(lin.size() == 5);
    CHECK(lin.front() == doctest::Approx(1.0));
    CHECK(lin.back() == doctest::Approx(2.0));
    CHECK(lin[1] == doctest::Approx(1.25));

    auto lg = log_grid(0.01, 1.0, 3);
    REQUIRE(lg.size() == 3);
    CHECK(lg[1] == doctest::Approx(0.1));

    CHECK_THROWS_AS(linear_grid(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(0.5, 0.1, 5), std::invalid_argument);
}
