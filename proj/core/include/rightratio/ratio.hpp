#pragma once

#include <vector>

#include "rightratio/geodesic.hpp"
#include "rightratio/surface.hpp"

namespace rr {

struct RatioSample {
    double r = 0.0;       // angle measuring distance
    double ratio = 0.0;   // chord^2 / (2r)^2
    double chord = 0.0;   // geodesic |DE|
    bool converged = false;
};

struct RatioCurve {
    SurfaceSpec surface;
    ChartPoint base;
    double frame_angle = 0.0;
    std::vector<RatioSample> samples; // ordered by increasing r

    std::size_t converged_count() const;
};

struct CurvatureEstimate {
    double curvature = 0.0;          // K-hat = -12 c2
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
    double residual_rms = 0.0;
    double condition_number = 0.0;
    double r_min = 0.0, r_max = 0.0; // fit range actually used
    bool flat_intercept = false;     // |c0 - 1/2| <= 1e-3
};

class DegenerateCurveError : public std::runtime_error {
public:
    explicit DegenerateCurveError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Ratio of the angle spanned by two unit directions at p, measured at
/// distance r: walk both arms to the geodesic circle, then compare the chord
/// |DE| against the straight-line value 2r.
RatioSample angle_distance_ratio(const SurfaceSpec& surface, ChartPoint p,
                                 const TangentVector& dir1,
                                 const TangentVector& dir2, double r,
                                 const DistanceOptions& opts = {});

RatioSample right_ratio(const SurfaceSpec& surface, ChartPoint p, double phi,
                        double r, const DistanceOptions& opts = {});

/// One sample per grid value, evaluated concurrently; non-converged samples
/// are kept with their flag.
RatioCurve ratio_curve(const SurfaceSpec& surface, ChartPoint p, double phi,
                       const std::vector<double>& r_grid,
                       const DistanceOptions& opts = {});

/// Least-squares fit ratio(r) = c0 + c1 r + c2 r^2 + c3 r^3 over the smallest
/// 60% of converged samples by r; curvature recovered as -12 c2.
CurvatureEstimate estimate_curvature(const RatioCurve& curve);

struct FlatnessResult {
    bool flat = false;
    double max_deviation = 0.0;
};

FlatnessResult flatness_test(const RatioCurve& curve, double tol);

struct ConeJump {
    double location = 0.0;   // r of the larger sample of the jump pair
    double magnitude = 0.0;  // |ratio step| across the jump
    double background = 0.0; // median neighboring sample-to-sample variation
};

/// Right-ratio discontinuity scan across the apex distance, using the
/// unrolled-sector distance (the integrator cannot cross the apex).
ConeJump cone_discontinuity_probe(const SurfaceSpec& cone, ChartPoint p,
                                  const std::vector<double>& r_grid);

/// Log- or linearly-spaced grids for curve construction.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Grid suited to the small-r curvature fit at p: 50 log-spaced radii up to
/// 0.3 of the local curvature length scale (or the injectivity bound where
/// the surface is flat).
std::vector<double> default_fit_grid(const SurfaceSpec& surface, ChartPoint p);

} // namespace rr
