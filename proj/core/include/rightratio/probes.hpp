#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rightratio/geodesic.hpp"
#include "rightratio/ratio.hpp"
#include "rightratio/surface.hpp"

namespace rr {

struct ViolationDetail {
    std::size_t trial = 0;
    std::string what;
    double slack = 0.0; // signed constraint violation, positive = violated
};

struct ProbeReport {
    std::string name;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t skipped = 0; // non-converged engine results
    double worst_slack = 0.0;
    std::vector<ViolationDetail> details;

    bool passed() const { return violations == 0; }
};

/// Identity, symmetry and triangle-inequality checks on seeded random point
/// triples drawn from a common injectivity ball.  Identical seeds give
/// identical trial sequences.
ProbeReport metric_axioms_check(const SurfaceSpec& surface, std::size_t trials,
                                std::uint64_t seed,
                                const DistanceOptions& opts = {});

/// Unique-minimum and strict-monotonicity scan of t -> d(C, line(t)), plus a
/// perpendicularity check at the foot in angle-distance-ratio terms.
ProbeReport perpendicular_uniqueness_check(const SurfaceSpec& surface,
                                           ChartPoint c, const GeodesicPath& line,
                                           const DistanceOptions& opts = {});

enum class RoundRelation {
    ExclusivelyOutside, // 0 intersections
    InclusivelyOutside, // 1, tangent from outside
    Intersecting,       // 2
    InclusivelyInside,  // 1, tangent from inside
    ExclusivelyInside,  // 0
    Degenerate,         // rA = rB = dAB = 0
};

std::string to_string(RoundRelation rel);
int intersection_count(RoundRelation rel);

/// Classification of two rounds by radii and center distance, evaluated on
/// the plane.
RoundRelation round_intersection_check(double r_a, double r_b, double d_ab);

struct SquareReport {
    ChartPoint center;                      // O
    ChartPoint a, b, c, d;                  // diagonal endpoints
    ChartPoint e, f, g, h;                  // side midpoints
    double side_ac = 0, side_cb = 0, side_bd = 0, side_da = 0;
    double diagonal_ab = 0, diagonal_cd = 0;
    double corner_ratio_a = 0, corner_ratio_c = 0, corner_ratio_b = 0,
           corner_ratio_d = 0;
    double max_flat_deviation = 0.0; // against sides sqrt(2)h, diagonals 2h, ratios 1/2
};

/// Places the four diagonal endpoints at geodesic distance half_diagonal from
/// the center along the phi frame, then measures sides, midpoints and corner
/// ratios.
SquareReport square_construction(const SurfaceSpec& surface, ChartPoint center,
                                 double half_diagonal, double phi,
                                 const DistanceOptions& opts = {});

} // namespace rr
