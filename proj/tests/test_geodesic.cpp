#include <doctest.h>

#include <random>

#include "rightratio/geodesic.hpp"

using namespace rr;

namespace {

TangentVector frame_dir(const SurfaceSpec& s, ChartPoint p, double phi) {
    return orthonormal_frame(s, p, phi)[0];
}

ChartPoint random_ball_point(const SurfaceSpec& s, ChartPoint base, double radius,
                             std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double phi = 2.0 * kPi * unit(rng);
    double r = radius * (0.05 + 0.95 * unit(rng));
    return exp_map(s, base, frame_dir(s, base, phi), r);
}

} // namespace

TEST_CASE("plane geodesics are straight lines") {
    SurfaceSpec plane = SurfaceSpec::plane();
    GeodesicPath path = integrate_geodesic(plane, {0, 0}, {{0, 0}, 1, 0}, 5.0);
    REQUIRE(path.ok());
    CHECK(path.length() == doctest::Approx(5.0));
    CHECK(path.samples.back().position.u == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(path.samples.back().position.v == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("sphere meridian truncates at the pole guard band") {
    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    // due north from the equator: decreasing colatitude
    GeodesicPath path =
        integrate_geodesic(sphere, {kPi / 2.0, 0.0}, {{kPi / 2.0, 0.0}, -1.0, 0.0},
                           kPi / 2.0);
    CHECK(path.status == PathStatus::HitSingularGuard);
    CHECK(path.samples.back().position.u < 1e-6);
}

TEST_CASE("torus meridian arc length") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    // meridian circles (constant v) are geodesics; arc length = rt * du
    GeodesicPath path =
        integrate_geodesic(torus, {kPi, 0.0}, frame_dir(torus, {kPi, 0.0}, 0.0), 0.5);
    REQUIRE(path.ok());
    ChartPoint end = reduce(torus, path.samples.back().position);
    CHECK(end.u == doctest::Approx(1.0 - kPi).epsilon(1e-8)); // pi + 1, reduced
    CHECK(end.v == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("integration speed stays unit") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    GeodesicPath path = integrate_geodesic(torus, {0.4, 0.2},
                                           frame_dir(torus, {0.4, 0.2}, 1.1), 1.2);
    REQUIRE(path.ok());
    for (const auto& s : path.samples) {
        double speed = metric_at(torus, reduce(torus, s.position)).norm(s.du_ds, s.dv_ds);
        CHECK(std::abs(speed - 1.0) < 1e-9);
    }
}

TEST_CASE("exp_map basics") {
    SurfaceSpec plane = SurfaceSpec::plane();
    ChartPoint p = exp_map(plane, {0, 0}, {{0, 0}, 0, 1}, 2.0);
    CHECK(p.u == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p.v == doctest::Approx(2.0).epsilon(1e-10));

    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    p = exp_map(sphere, {kPi / 2.0, 0.0}, {{kPi / 2.0, 0.0}, -1.0, 0.0}, 0.3);
    CHECK(p.u == doctest::Approx(kPi / 2.0 - 0.3).epsilon(1e-9));

    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    // outer equator is a geodesic; arc length = (Rc + rt) dv = 3 dv
    p = exp_map(torus, {0.0, 0.0}, {{0.0, 0.0}, 0.0, 1.0 / 3.0}, 0.3);
    CHECK(p.u == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(p.v == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("closed-form distances") {
    CHECK(geodesic_distance(SurfaceSpec::plane(), {0, 0}, {3, 4}).distance ==
          doctest::Approx(5.0));
    CHECK(geodesic_distance(SurfaceSpec::sphere(1.0), {kPi / 2, 0}, {kPi / 2, 1})
              .distance == doctest::Approx(1.0));
}

TEST_CASE("torus meridian distance by shooting") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    ShootingResult r = geodesic_distance(torus, {kPi, 0.0}, {kPi - 0.4, 0.0});
    CHECK(r.converged);
    CHECK(r.distance == doctest::Approx(0.2).epsilon(1e-7));
}

TEST_CASE("cone unrolled distance, including apex paths") {
    // sector angle 1.5 pi: sin(alpha) = 0.75
    SurfaceSpec cone = SurfaceSpec::cone(std::asin(0.75));
    // same generator: distance is the slant difference
    CHECK(geodesic_distance(cone, {1.0, 0.0}, {2.0, 0.0}).distance ==
          doctest::Approx(1.0));
    // planar triangle in the unrolled sector
    double dv = 0.4;
    double expected = std::sqrt(1.0 + 1.0 - 2.0 * std::cos(dv * 0.75));
    CHECK(geodesic_distance(cone, {1.0, 0.0}, {1.0, dv}).distance ==
          doctest::Approx(expected));
    // opposite azimuth: min unrolled angle is 0.75 pi * ... still below pi,
    // so the apex path never wins on this cone
    ShootingResult far = geodesic_distance(cone, {1.0, 0.0}, {1.0, kPi});
    double ang = std::min(kPi * 0.75, 1.5 * kPi - kPi * 0.75);
    CHECK(far.distance == doctest::Approx(std::sqrt(2.0 - 2.0 * std::cos(ang))));
}

TEST_CASE("exp/distance consistency at random points") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const SurfaceSpec surfaces[] = {SurfaceSpec::plane(), SurfaceSpec::sphere(1.0),
                                    SurfaceSpec::torus(2.5, 0.5)};
    const ChartPoint bases[] = {{0.3, -0.2}, {kPi / 2.0, 0.4}, {0.7, 0.3}};
    for (int k = 0; k < 3; ++k) {
        const SurfaceSpec& s = surfaces[k];
        for (int i = 0; i < 60; ++i) {
            double phi = 2.0 * kPi * unit(rng);
            double bound = s.injectivity_bound(bases[k].u);
            if (!std::isfinite(bound)) bound = 2.0;
            double r = (0.1 + 0.5 * unit(rng)) * bound;
            ChartPoint q = exp_map(s, bases[k], frame_dir(s, bases[k], phi), r);
            ShootingResult d = geodesic_distance(s, bases[k], q);
            CHECK(d.converged);
            CHECK(std::abs(d.distance - r) <= 1e-6 * (1.0 + r));
        }
    }
}

TEST_CASE("distance symmetry on the torus") {
    SurfaceSpec torus = SurfaceSpec::torus(2.5, 0.5);
    std::mt19937_64 rng(31);
    ChartPoint base{0.9, -0.4};
    for (int i = 0; i < 100; ++i) {
        ChartPoint a = random_ball_point(torus, base, 0.5, rng);
        ChartPoint b = random_ball_point(torus, base, 0.5, rng);
        ShootingResult ab = geodesic_distance(torus, a, b);
        ShootingResult ba = geodesic_distance(torus, b, a);
        if (!ab.converged || !ba.converged) continue;
        CHECK(std::abs(ab.distance - ba.distance) <=
              1e-8 * (1.0 + std::max(ab.distance, ba.distance)));
    }
}

TEST_CASE("generic shooting matches closed forms") {
    std::mt19937_64 rng(41);
    DistanceOptions generic;
    generic.use_closed_form = false;
    struct Config {
        SurfaceSpec surface;
        ChartPoint base;
        double ball;
    };
    const Config configs[] = {
        {SurfaceSpec::plane(), {0.0, 0.0}, 1.5},
        {SurfaceSpec::sphere(1.0), {kPi / 2.0, 0.0}, 0.8},
        {SurfaceSpec::sphere(2.0), {kPi / 2.0, 1.0}, 1.5},
        {SurfaceSpec::cone(0.9), {1.5, 0.0}, 0.4},
    };
    for (const auto& cfg : configs) {
        int checked = 0;
        for (int i = 0; i < 350 && checked < 250; ++i) {
            ChartPoint a = random_ball_point(cfg.surface, cfg.base, cfg.ball, rng);
            ChartPoint b = random_ball_point(cfg.surface, cfg.base, cfg.ball, rng);
            double oracle = *closed_form_distance(cfg.surface, a, b);
            if (oracle < 1e-3) continue;
            ShootingResult shot = geodesic_distance(cfg.surface, a, b, generic);
            CHECK(shot.converged);
            CHECK(std::abs(shot.distance - oracle) <= 1e-6 * (1.0 + oracle));
            ++checked;
        }
        CHECK(checked >= 200);
    }
}

TEST_CASE("foot of perpendicular on the plane") {
    SurfaceSpec plane = SurfaceSpec::plane();
    GeodesicPath axis = integrate_geodesic(plane, {-5, 0}, {{-5, 0}, 1, 0}, 10.0);

    PerpendicularFoot f = foot_of_perpendicular(plane, {0, 1}, axis);
    CHECK(f.foot.u == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(f.foot.v == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(f.distance == doctest::Approx(1.0).epsilon(1e-9));

    f = foot_of_perpendicular(plane, {2, 3}, axis);
    CHECK(f.foot.u == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(f.distance == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("foot of perpendicular on the sphere equator") {
    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    ChartPoint start{kPi / 2.0, -0.8};
    GeodesicPath equator =
        integrate_geodesic(sphere, start, orthonormal_frame(sphere, start, 0.0)[1], 1.6);
    PerpendicularFoot f = foot_of_perpendicular(sphere, {kPi / 4.0, 0.0}, equator);
    CHECK(f.foot.u == doctest::Approx(kPi / 2.0).epsilon(1e-7));
    CHECK(f.foot.v == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(f.distance == doctest::Approx(kPi / 4.0).epsilon(1e-8));
}

TEST_CASE("foot outside the segment is an error") {
    SurfaceSpec plane = SurfaceSpec::plane();
    GeodesicPath axis = integrate_geodesic(plane, {1, 0}, {{1, 0}, 1, 0}, 2.0);
    CHECK_THROWS_AS(foot_of_perpendicular(plane, {0, 1}, axis), GeodesicError);
}

TEST_CASE("circle-geodesic intersections on the plane") {
    SurfaceSpec plane = SurfaceSpec::plane();
    GeodesicPath axis = integrate_geodesic(plane, {-5, 0}, {{-5, 0}, 1, 0}, 10.0);
    ChartPoint c{0, 1};

    auto two = circle_geodesic_intersections(plane, c, 2.0, axis);
    REQUIRE(two.size() == 2);
    CHECK(two[0].u == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-8));
    CHECK(two[1].u == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
    CHECK(two[0].v == doctest::Approx(0.0).epsilon(1e-9));

    CHECK(circle_geodesic_intersections(plane, c, 0.5, axis).empty());

    auto tangent = circle_geodesic_intersections(plane, c, 1.0, axis);
    REQUIRE(tangent.size() == 1);
    CHECK(tangent[0].u == doctest::Approx(0.0).epsilon(1e-7));

    GeodesicPath short_axis = integrate_geodesic(plane, {-1, 0}, {{-1, 0}, 1, 0}, 2.0);
    CHECK_THROWS_AS(circle_geodesic_intersections(plane, c, 5.0, short_axis),
                    GeodesicError);
}

TEST_CASE("distance along a line grows monotonically away from the foot") {
    SurfaceSpec sphere = SurfaceSpec::sphere(1.0);
    ChartPoint start{kPi / 2.0, -0.8};
    GeodesicPath equator =
        integrate_geodesic(sphere, start, orthonormal_frame(sphere, start, 0.0)[1], 1.6);
    ChartPoint c{kPi / 4.0, 0.0};
    PerpendicularFoot f = foot_of_perpendicular(sphere, c, equator);
    double prev = f.distance;
    for (double t = f.foot_param + 0.05; t <= equator.length(); t += 0.05) {
        double d = geodesic_distance(sphere, c, reduce(sphere, equator.point_at(t))).distance;
        CHECK(d > prev);
        prev = d;
    }
    prev = f.distance;
    for (double t = f.foot_param - 0.05; t >= 0.0; t -= 0.05) {
        double d = geodesic_distance(sphere, c, reduce(sphere, equator.point_at(t))).distance;
        CHECK(d > prev);
        prev = d;
    }
}
