#include "rightratio/ratio.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "rightratio/parallel.hpp"

namespace rr {

std::size_t RatioCurve::converged_count() const {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(),
                      [](const RatioSample& s) { return s.converged; }));
}

RatioSample angle_distance_ratio(const SurfaceSpec& surface, ChartPoint p,
                                 const TangentVector& dir1,
                                 const TangentVector& dir2, double r,
                                 const DistanceOptions& opts) {
    RatioSample sample;
    sample.r = r;
    try {
        ChartPoint d = exp_map(surface, p, dir1, r);
        ChartPoint e = exp_map(surface, p, dir2, r);
        ShootingResult chord = geodesic_distance(surface, d, e, opts);
        if (!chord.converged) return sample;
        sample.chord = chord.distance;
        double ratio = (chord.distance * chord.distance) / (4.0 * r * r);
        if (ratio < 0.0 || ratio > 1.0) {
            double overshoot = std::max(-ratio, ratio - 1.0);
            if (overshoot > 1e-9) return sample; // out of range, not trustworthy
            ratio = std::clamp(ratio, 0.0, 1.0);
        }
        sample.ratio = ratio;
        sample.converged = true;
    } catch (const GeodesicError&) {
    } catch (const SingularPointError&) {
    }
    return sample;
}

RatioSample right_ratio(const SurfaceSpec& surface, ChartPoint p, double phi,
                        double r, const DistanceOptions& opts) {
    auto frame = orthonormal_frame(surface, p, phi);
    return angle_distance_ratio(surface, p, frame[0], frame[1], r, opts);
}

RatioCurve ratio_curve(const SurfaceSpec& surface, ChartPoint p, double phi,
                       const std::vector<double>& r_grid,
                       const DistanceOptions& opts) {
    RatioCurve curve;
    curve.surface = surface;
    curve.base = p;
    curve.frame_angle = phi;
    curve.samples.resize(r_grid.size());
    parallel_for(r_grid.size(), [&](std::size_t i) {
        curve.samples[i] = right_ratio(surface, p, phi, r_grid[i], opts);
    });
    return curve;
}

CurvatureEstimate estimate_curvature(const RatioCurve& curve) {
    std::vector<const RatioSample*> good;
    for (const auto& s : curve.samples)
        if (s.converged) good.push_back(&s);
    if (good.size() < 5)
        throw DegenerateCurveError("curvature fit needs at least 5 converged samples");

    // asymptotic expansion at r -> 0: keep the smallest 60% of samples
    std::size_t keep = std::max<std::size_t>(5, (good.size() * 3 + 4) / 5);
    keep = std::min(keep, good.size());
    good.resize(keep);

    Eigen::MatrixXd a(keep, 4);
    Eigen::VectorXd y(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        double r = good[i]->r;
        a(i, 0) = 1.0;
        a(i, 1) = r;
        a(i, 2) = r * r;
        a(i, 3) = r * r * r;
        y(i) = good[i]->ratio;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd c = svd.solve(y);

    CurvatureEstimate est;
    est.c0 = c(0);
    est.c1 = c(1);
    est.c2 = c(2);
    est.c3 = c(3);
    est.curvature = -12.0 * c(2);
    est.residual_rms = std::sqrt((a * c - y).squaredNorm() / keep);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    est.condition_number = smin > 0.0 ? svd.singularValues()(0) / smin
                                      : std::numeric_limits<double>::infinity();
    est.r_min = good.front()->r;
    est.r_max = good.back()->r;
    est.flat_intercept = std::abs(est.c0 - 0.5) <= 1e-3;
    if (est.condition_number > 1e12)
        throw DegenerateCurveError("ill-conditioned curvature fit, condition number " +
                                   std::to_string(est.condition_number));
    return est;
}

FlatnessResult flatness_test(const RatioCurve& curve, double tol) {
    if (curve.converged_count() == 0)
        throw DegenerateCurveError("flatness test on a curve with no converged samples");
    FlatnessResult res;
    for (const auto& s : curve.samples) {
        if (!s.converged) continue;
        res.max_deviation = std::max(res.max_deviation, std::abs(s.ratio - 0.5));
    }
    res.flat = res.max_deviation <= tol;
    return res;
}

ConeJump cone_discontinuity_probe(const SurfaceSpec& cone, ChartPoint p,
                                  const std::vector<double>& r_grid) {
    bool planar = cone.kind == SurfaceKind::Plane;
    if (!planar && cone.kind != SurfaceKind::Cone)
        throw std::invalid_argument("discontinuity probe expects a cone (or plane control)");
    if (r_grid.size() < 4)
        throw std::invalid_argument("discontinuity probe needs at least 4 grid points");
    double apex_distance = p.u;
    if (!planar &&
        (r_grid.front() >= apex_distance || r_grid.back() <= apex_distance))
        throw std::invalid_argument("probe grid must straddle the apex distance");

    double sin_alpha = planar ? 1.0 : std::sin(cone.cone_half_angle);

    // Unrolled-sector construction: p at Cartesian (s0, 0); the right angle
    // opens toward the apex, arms at 45 degrees on either side of the inward
    // radial.  All pieces are planar in the unrolling; only the chord |DE|
    // sees the sector identification.
    auto rho = [&](double r) {
        double c = r / std::sqrt(2.0);
        double dx = apex_distance - c, dy = c;
        double slant = std::hypot(dx, dy);
        double beta = std::atan2(dy, dx);
        double chord;
        if (planar) {
            chord = 2.0 * dy;
        } else {
            SurfaceSpec s = cone;
            ChartPoint d{slant, beta / sin_alpha};
            ChartPoint e{slant, -beta / sin_alpha};
            chord = *closed_form_distance(s, d, e);
        }
        return chord * chord / (4.0 * r * r);
    };

    std::vector<double> values(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) values[i] = rho(r_grid[i]);

    // Discontinuity statistic: largest change between consecutive sample
    // increments.  A branch switch leaves rho continuous but kinks it, and
    // the increment sequence jumps there.
    std::vector<double> incr(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        incr[i] = values[i + 1] - values[i];
    std::size_t best = 1;
    double best_jump = 0.0;
    for (std::size_t i = 1; i < incr.size(); ++i) {
        double j = std::abs(incr[i] - incr[i - 1]);
        if (j > best_jump) {
            best_jump = j;
            best = i;
        }
    }
    std::vector<double> background;
    for (std::size_t i = 1; i < incr.size(); ++i) {
        if (i + 1 >= best && i <= best + 1) continue;
        background.push_back(std::abs(incr[i] - incr[i - 1]));
    }
    ConeJump jump;
    jump.location = 0.5 * (r_grid[best] + r_grid[best + 1]);
    jump.magnitude = best_jump;
    if (!background.empty()) {
        std::nth_element(background.begin(),
                         background.begin() + background.size() / 2,
                         background.end());
        jump.background = background[background.size() / 2];
    }
    return jump;
}

std::vector<double> default_fit_grid(const SurfaceSpec& surface, ChartPoint p) {
    double k = gaussian_curvature(surface, p);
    double bound = surface.injectivity_bound(p.u);
    if (!std::isfinite(bound)) bound = 1.0;
    double r_max = 0.3 * bound;
    if (k != 0.0) r_max = std::min(r_max, 0.3 / std::sqrt(std::abs(k)));
    return log_grid(r_max / 10.0, r_max, 50);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count < 1 || !(lo > 0.0) || hi < lo)
        throw std::invalid_argument("bad grid bounds");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (count < 1 || !(lo > 0.0) || hi < lo)
        throw std::invalid_argument("bad grid bounds");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (count - 1));
    return g;
}

} // namespace rr
