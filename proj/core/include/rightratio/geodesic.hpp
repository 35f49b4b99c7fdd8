#pragma once

#include <optional>
#include <vector>

#include "rightratio/surface.hpp"

namespace rr {

struct GeodesicState {
    ChartPoint position;
    double du_ds = 0.0; // unit-speed velocity components
    double dv_ds = 0.0;
};

enum class PathStatus { Ok, HitSingularGuard, StepUnderflow };

/// Arc-length-sampled geodesic.  Positions are kept unwrapped so the path is
/// continuous in chart coordinates; use reduce() when comparing points.
struct GeodesicPath {
    SurfaceSpec surface;
    std::vector<double> arc_length;       // strictly increasing from 0
    std::vector<GeodesicState> samples;   // one per arc_length entry
    PathStatus status = PathStatus::Ok;

    double length() const { return arc_length.empty() ? 0.0 : arc_length.back(); }
    bool ok() const { return status == PathStatus::Ok; }

    /// Cubic Hermite interpolation between stored samples.
    GeodesicState state_at(double s) const;
    ChartPoint point_at(double s) const { return state_at(s).position; }
};

struct IntegratorOptions {
    double tolerance = 1e-10;  // local error per unit length
    double max_step = 0.05;
    double min_step = 1e-12;
};

GeodesicPath integrate_geodesic(const SurfaceSpec& surface, ChartPoint start,
                                const TangentVector& dir, double length,
                                const IntegratorOptions& opts = {});

ChartPoint exp_map(const SurfaceSpec& surface, ChartPoint p,
                   const TangentVector& dir, double r);

struct ShootingResult {
    double distance = 0.0;
    TangentVector launch;      // unit launch direction at the start point
    double residual = 0.0;     // terminal miss (ambient length)
    int iterations = 0;
    bool converged = false;
};

struct DistanceOptions {
    /// When true, plane/sphere/cone use their closed forms; the torus always
    /// shoots.  Set false to force the generic shooting path everywhere.
    bool use_closed_form = true;
    double tolerance = 1e-9;  // residual <= tol * (1 + distance)
    int max_iterations = 64;
};

ShootingResult geodesic_distance(const SurfaceSpec& surface, ChartPoint a,
                                 ChartPoint b, const DistanceOptions& opts = {});

/// Closed-form distances, independent of the integrator: plane (Euclidean),
/// sphere (great circle), cone (unrolled sector, minimized over winding
/// images; paths through the apex allowed).  nullopt for the torus.
std::optional<double> closed_form_distance(const SurfaceSpec& surface,
                                           ChartPoint a, ChartPoint b);

class GeodesicError : public std::runtime_error {
public:
    explicit GeodesicError(const std::string& what) : std::runtime_error(what) {}
};

struct PerpendicularFoot {
    ChartPoint foot;
    double foot_param = 0.0;   // arc-length parameter along the line
    double distance = 0.0;     // |CD|
};

/// Nearest point to c on the line, by golden-section search on the arc-length
/// parameter.  Throws GeodesicError when the minimizer sits on the parameter
/// boundary.
PerpendicularFoot foot_of_perpendicular(const SurfaceSpec& surface, ChartPoint c,
                                        const GeodesicPath& line,
                                        const DistanceOptions& opts = {});

/// Points of the geodesic circle (c, r) on the line: none below the foot
/// distance, the foot itself in a 1e-9 band around it, two otherwise.
std::vector<ChartPoint> circle_geodesic_intersections(
    const SurfaceSpec& surface, ChartPoint c, double r, const GeodesicPath& line,
    const DistanceOptions& opts = {});

} // namespace rr
