#include "rightratio/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace rr {

namespace {

struct OdeState {
    double u, v, du, dv;
};

OdeState operator+(const OdeState& a, const OdeState& b) {
    return {a.u + b.u, a.v + b.v, a.du + b.du, a.dv + b.dv};
}
OdeState operator*(double s, const OdeState& a) {
    return {s * a.u, s * a.v, s * a.du, s * a.dv};
}

// Geodesic equation right-hand side.
OdeState derivative(const SurfaceSpec& surface, const OdeState& y) {
    ChristoffelSymbols g = christoffel_at(surface, {y.u, y.v});
    double ddu = -(g.u_uu * y.du * y.du + 2.0 * g.u_uv * y.du * y.dv +
                   g.u_vv * y.dv * y.dv);
    double ddv = -(g.v_uu * y.du * y.du + 2.0 * g.v_uv * y.du * y.dv +
                   g.v_vv * y.dv * y.dv);
    return {y.du, y.dv, ddu, ddv};
}

// Dormand-Prince 5(4) pair.
struct RkStep {
    OdeState y5;
    double error;
};

RkStep dopri_step(const SurfaceSpec& surface, const OdeState& y, double h) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeState k1 = derivative(surface, y);
    OdeState k2 = derivative(surface, y + h * (a21 * k1));
    OdeState k3 = derivative(surface, y + h * (a31 * k1 + a32 * k2));
    OdeState k4 = derivative(surface, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    OdeState k5 =
        derivative(surface, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    OdeState k6 = derivative(
        surface, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    OdeState y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    OdeState k7 = derivative(surface, y5);

    OdeState err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double error = std::sqrt(err.u * err.u + err.v * err.v + err.du * err.du +
                             err.dv * err.dv);
    return {y5, error};
}

void renormalize(const SurfaceSpec& surface, OdeState& y) {
    double speed = metric_at(surface, {y.u, y.v}).norm(y.du, y.dv);
    y.du /= speed;
    y.dv /= speed;
}

double hermite(double p0, double m0, double p1, double m1, double t, double h) {
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * h * m0 +
           (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * h * m1;
}

double hermite_deriv(double p0, double m0, double p1, double m1, double t,
                     double h) {
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * p0 + (3 * t2 - 4 * t + 1) * h * m0 +
            (-6 * t2 + 6 * t) * p1 + (3 * t2 - 2 * t) * h * m1) /
           h;
}

} // namespace

GeodesicState GeodesicPath::state_at(double s) const {
    if (samples.empty()) throw GeodesicError("empty geodesic path");
    if (s <= arc_length.front()) return samples.front();
    if (s >= arc_length.back()) return samples.back();
    auto it = std::upper_bound(arc_length.begin(), arc_length.end(), s);
    size_t i = static_cast<size_t>(it - arc_length.begin()) - 1;
    double s0 = arc_length[i], s1 = arc_length[i + 1];
    double h = s1 - s0;
    double t = (s - s0) / h;
    const GeodesicState& a = samples[i];
    const GeodesicState& b = samples[i + 1];
    GeodesicState out;
    out.position.u = hermite(a.position.u, a.du_ds, b.position.u, b.du_ds, t, h);
    out.position.v = hermite(a.position.v, a.dv_ds, b.position.v, b.dv_ds, t, h);
    out.du_ds = hermite_deriv(a.position.u, a.du_ds, b.position.u, b.du_ds, t, h);
    out.dv_ds = hermite_deriv(a.position.v, a.dv_ds, b.position.v, b.dv_ds, t, h);
    return out;
}

GeodesicPath integrate_geodesic(const SurfaceSpec& surface, ChartPoint start,
                                const TangentVector& dir, double length,
                                const IntegratorOptions& opts) {
    if (!(length > 0.0)) throw std::invalid_argument("geodesic length must be positive");
    GeodesicPath path;
    path.surface = surface;

    OdeState y{start.u, start.v, dir.du, dir.dv};
    renormalize(surface, y);
    path.arc_length.push_back(0.0);
    path.samples.push_back({{y.u, y.v}, y.du, y.dv});

    double s = 0.0;
    double h = std::min(opts.max_step, length);
    while (s < length) {
        h = std::min(h, length - s);
        RkStep step;
        bool stage_singular = false;
        try {
            step = dopri_step(surface, y, h);
        } catch (const SingularPointError&) {
            stage_singular = true;
        }
        double tol = opts.tolerance * std::max(h, 1e-16);
        if (stage_singular || step.error > tol ||
            is_singular(surface, {step.y5.u, step.y5.v})) {
            double shrink = stage_singular ? 0.5
                : std::max(0.1, 0.9 * std::pow(tol / step.error, 0.2));
            if (is_singular(surface, {step.y5.u, step.y5.v})) shrink = std::min(shrink, 0.5);
            h *= shrink;
            if (h < opts.min_step) {
                path.status = stage_singular ? PathStatus::HitSingularGuard
                                             : PathStatus::StepUnderflow;
                // A vanishing step with healthy local error means the state
                // is pinned against a singular guard.
                if (!stage_singular && step.error <= tol)
                    path.status = PathStatus::HitSingularGuard;
                return path;
            }
            continue;
        }
        y = step.y5;
        renormalize(surface, y);
        s += h;
        path.arc_length.push_back(s);
        path.samples.push_back({{y.u, y.v}, y.du, y.dv});
        h = std::min(opts.max_step,
                     h * std::min(5.0, 0.9 * std::pow(tol / std::max(step.error, 1e-300), 0.2)));
    }
    return path;
}

ChartPoint exp_map(const SurfaceSpec& surface, ChartPoint p,
                   const TangentVector& dir, double r) {
    GeodesicPath path = integrate_geodesic(surface, p, dir, r);
    if (!path.ok())
        throw GeodesicError("exp_map: geodesic truncated before reaching arc length");
    return reduce(surface, path.samples.back().position);
}

namespace {

// Sector angle of the unrolled cone.
double cone_sector_angle(const SurfaceSpec& s) {
    return 2.0 * kPi * std::sin(s.cone_half_angle);
}

struct ConeUnrolled {
    double distance;
    double theta;      // signed unrolled angle from a to b (best image)
    bool through_apex;
};

ConeUnrolled cone_distance_impl(const SurfaceSpec& surface, ChartPoint a,
                                ChartPoint b) {
    double lam = cone_sector_angle(surface);
    double sa = std::sin(surface.cone_half_angle);
    double dbeta = (b.v - a.v) * sa;
    double best = std::numeric_limits<double>::infinity();
    for (int k = -3; k <= 3; ++k) {
        double th = dbeta + k * lam;
        if (std::abs(th) < std::abs(best)) best = th;
    }
    if (std::abs(best) >= kPi) {
        return {a.u + b.u, best, true};
    }
    double d = std::sqrt(a.u * a.u + b.u * b.u -
                         2.0 * a.u * b.u * std::cos(best));
    return {d, best, false};
}

// Chart components of an ambient tangent vector (metric is diagonal in all
// supported charts, so project onto the coordinate basis).
TangentVector pull_back(const SurfaceSpec& surface, ChartPoint p, const Vec3& w) {
    auto jac = embedding_jacobian(surface, p);
    MetricTensor m = metric_at(surface, p);
    return {p, w.dot(jac[0]) / m.E, w.dot(jac[1]) / m.G};
}

struct ClosestApproach {
    double s;         // arc-length parameter of the closest point
    double dist;      // ambient distance from the path to the target
    bool at_end;
};

ClosestApproach closest_approach(const GeodesicPath& path, const Vec3& target) {
    const SurfaceSpec& surf = path.surface;
    size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < path.samples.size(); ++i) {
        Vec3 d = embed(surf, path.samples[i].position) - target;
        double d2 = d.dot(d);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    double lo = path.arc_length[best > 0 ? best - 1 : 0];
    double hi = path.arc_length[std::min(best + 1, path.samples.size() - 1)];
    auto f = [&](double s) {
        Vec3 d = embed(surf, path.point_at(s)) - target;
        return d.dot(d);
    };
    constexpr double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-13 * (1.0 + path.length())) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = f(x2);
        }
    }
    double s = 0.5 * (lo + hi);
    bool at_end = s >= path.length() * (1.0 - 1e-9);
    return {s, std::sqrt(f(s)), at_end};
}

// Signed lateral miss of the trajectory relative to the target, positive on
// the side of (normal x tangent).
double signed_miss(const GeodesicPath& path, const Vec3& target, double s) {
    GeodesicState st = path.state_at(s);
    ChartPoint p = st.position;
    auto jac = embedding_jacobian(path.surface, reduce(path.surface, p));
    Vec3 tangent = (jac[0] * st.du_ds + jac[1] * st.dv_ds).normalized();
    Vec3 normal = jac[0].cross(jac[1]).normalized();
    Vec3 w = target - embed(path.surface, p);
    return w.dot(normal.cross(tangent));
}

ShootingResult shoot(const SurfaceSpec& surface, ChartPoint a, ChartPoint b,
                     const DistanceOptions& opts) {
    Vec3 pa = embed(surface, a), pb = embed(surface, b);
    Vec3 chord = pb - pa;
    double chord_len = chord.norm();

    auto frame = orthonormal_frame(surface, a, 0.0);
    auto jac = embedding_jacobian(surface, a);
    Vec3 e1a = jac[0] * frame[0].du + jac[1] * frame[0].dv;
    Vec3 e2a = jac[0] * frame[1].du + jac[1] * frame[1].dv;
    double psi = std::atan2(chord.dot(e2a), chord.dot(e1a));

    double path_len = 2.5 * chord_len;
    IntegratorOptions iopts;

    ShootingResult result;
    auto evaluate = [&](double angle, double& out_s, double& out_dist) {
        TangentVector dir{a, std::cos(angle) * frame[0].du + std::sin(angle) * frame[1].du,
                          std::cos(angle) * frame[0].dv + std::sin(angle) * frame[1].dv};
        for (int grow = 0; grow < 4; ++grow) {
            GeodesicPath path = integrate_geodesic(surface, a, dir, path_len, iopts);
            if (!path.ok()) throw GeodesicError("shooting trajectory hit a singular guard");
            ClosestApproach ca = closest_approach(path, pb);
            if (!ca.at_end || grow == 3) {
                out_s = ca.s;
                out_dist = ca.dist;
                return signed_miss(path, pb, ca.s);
            }
            path_len *= 1.6;
        }
        return 0.0; // unreachable
    };

    double s0 = 0.0, d0 = 0.0;
    double m0 = evaluate(psi, s0, d0);
    double tol = opts.tolerance * (1.0 + s0);
    result.iterations = 1;
    if (std::abs(m0) <= tol) {
        result.distance = s0;
        result.residual = std::abs(m0);
        result.converged = true;
    } else {
        double psi1 = psi + 1e-4;
        double s1 = 0.0, d1 = 0.0;
        double m1 = evaluate(psi1, s1, d1);
        ++result.iterations;
        double psi0 = psi;
        // bracket endpoints with opposite miss signs, once found
        bool have_bracket = false;
        double blo = 0, bhi = 0, mlo = 0;
        auto note = [&](double ang, double m) {
            if (!have_bracket) {
                if ((m0 < 0) != (m < 0)) {
                    blo = psi0; mlo = m0; bhi = ang; have_bracket = true;
                } else if ((m1 < 0) != (m < 0)) {
                    blo = psi1; mlo = m1; bhi = ang; have_bracket = true;
                }
            } else if ((mlo < 0) == (m < 0)) {
                blo = ang; mlo = m;
            } else {
                bhi = ang;
            }
        };
        note(psi1, m1);
        while (result.iterations < opts.max_iterations) {
            tol = opts.tolerance * (1.0 + s1);
            if (std::abs(m1) <= tol) {
                result.converged = true;
                break;
            }
            double next;
            if (std::abs(m1 - m0) > 1e-300) {
                next = psi1 - m1 * (psi1 - psi0) / (m1 - m0);
            } else {
                next = psi1 + ((m1 > 0) ? -1.0 : 1.0) * 1e-3;
            }
            if (have_bracket) {
                double lo = std::min(blo, bhi), hi = std::max(blo, bhi);
                if (!(next > lo && next < hi)) next = 0.5 * (blo + bhi);
            }
            psi0 = psi1; m0 = m1; s0 = s1;
            psi1 = next;
            m1 = evaluate(psi1, s1, d1);
            note(psi1, m1);
            ++result.iterations;
        }
        psi = psi1;
        s0 = s1;
        d0 = d1;
        result.residual = std::abs(m1);
        result.distance = s1;
    }
    if (result.converged) {
        result.distance = s0;
        result.residual = std::min(result.residual, d0);
    }
    TangentVector dir{a, std::cos(psi) * frame[0].du + std::sin(psi) * frame[1].du,
                      std::cos(psi) * frame[0].dv + std::sin(psi) * frame[1].dv};
    result.launch = dir;
    return result;
}

} // namespace

std::optional<double> closed_form_distance(const SurfaceSpec& surface,
                                           ChartPoint a, ChartPoint b) {
    a = reduce(surface, a);
    b = reduce(surface, b);
    switch (surface.kind) {
        case SurfaceKind::Plane:
            return std::hypot(b.u - a.u, b.v - a.v);
        case SurfaceKind::Sphere: {
            Vec3 pa = embed(surface, a).normalized();
            Vec3 pb = embed(surface, b).normalized();
            double ang = std::atan2(pa.cross(pb).norm(), pa.dot(pb));
            return surface.sphere_radius * ang;
        }
        case SurfaceKind::Cone:
            return cone_distance_impl(surface, a, b).distance;
        case SurfaceKind::Torus:
            return std::nullopt;
    }
    return std::nullopt;
}

ShootingResult geodesic_distance(const SurfaceSpec& surface, ChartPoint a,
                                 ChartPoint b, const DistanceOptions& opts) {
    a = reduce(surface, a);
    b = reduce(surface, b);
    Vec3 pa = embed(surface, a), pb = embed(surface, b);
    if ((pb - pa).norm() < 1e-14) {
        ShootingResult r;
        r.converged = true;
        r.launch = orthonormal_frame(surface, a, 0.0)[0];
        return r;
    }
    if (opts.use_closed_form) {
        if (auto d = closed_form_distance(surface, a, b)) {
            ShootingResult r;
            r.distance = *d;
            r.converged = true;
            switch (surface.kind) {
                case SurfaceKind::Plane: {
                    r.launch = {a, (b.u - a.u) / *d, (b.v - a.v) / *d};
                    break;
                }
                case SurfaceKind::Sphere: {
                    Vec3 ua = pa.normalized(), ub = pb.normalized();
                    Vec3 t = (ub - ua * ua.dot(ub)).normalized();
                    r.launch = normalized(surface, pull_back(surface, a, t));
                    break;
                }
                case SurfaceKind::Cone: {
                    ConeUnrolled cu = cone_distance_impl(surface, a, b);
                    if (cu.through_apex) {
                        r.launch = {a, -1.0, 0.0};
                    } else {
                        // Direction in the unrolled plane with a at angle 0.
                        double bx = b.u * std::cos(cu.theta), by = b.u * std::sin(cu.theta);
                        double dx = (bx - a.u) / cu.distance, dy = by / cu.distance;
                        // radial and azimuthal components at a
                        double sa = std::sin(surface.cone_half_angle);
                        r.launch = {a, dx, dy / (a.u * sa)};
                    }
                    break;
                }
                default: break;
            }
            return r;
        }
    }
    return shoot(surface, a, b, opts);
}

PerpendicularFoot foot_of_perpendicular(const SurfaceSpec& surface, ChartPoint c,
                                        const GeodesicPath& line,
                                        const DistanceOptions& opts) {
    auto d = [&](double t) {
        return geodesic_distance(surface, c, reduce(surface, line.point_at(t)), opts)
            .distance;
    };
    double len = line.length();
    constexpr int kScan = 33;
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScan; ++i) {
        double t = len * i / (kScan - 1);
        double di = d(t);
        if (di < best_d) {
            best_d = di;
            best = i;
        }
    }
    if (best == 0 || best == kScan - 1)
        throw GeodesicError("foot of perpendicular lies outside the line segment");
    double lo = len * (best - 1) / (kScan - 1);
    double hi = len * (best + 1) / (kScan - 1);
    constexpr double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = d(x1), f2 = d(x2);
    while (hi - lo > 1e-9) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = d(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = d(x2);
        }
    }
    // The distance minimum is quadratically flat, so the golden-section result
    // is only good to ~sqrt(solver noise).  Refine by bisecting the sign of the
    // central-difference derivative, which crosses zero with unit-order slope.
    double t_star = 0.5 * (lo + hi);
    {
        double h = 1e-6 * std::max(1.0, len);
        auto dd = [&](double t) { return d(t + h) - d(t - h); };
        double a = std::max(t_star - 64.0 * h, h);
        double b = std::min(t_star + 64.0 * h, len - h);
        if (a < b && dd(a) < 0.0 && dd(b) > 0.0) {
            for (int i = 0; i < 60 && b - a > 1e-13; ++i) {
                double mid = 0.5 * (a + b);
                (dd(mid) < 0.0 ? a : b) = mid;
            }
            t_star = 0.5 * (a + b);
        }
    }
    PerpendicularFoot foot;
    foot.foot_param = t_star;
    foot.foot = reduce(surface, line.point_at(t_star));
    foot.distance = d(t_star);
    return foot;
}

std::vector<ChartPoint> circle_geodesic_intersections(
    const SurfaceSpec& surface, ChartPoint c, double r, const GeodesicPath& line,
    const DistanceOptions& opts) {
    PerpendicularFoot foot = foot_of_perpendicular(surface, c, line, opts);
    constexpr double kTangentBand = 1e-9;
    if (r < foot.distance - kTangentBand) return {};
    if (std::abs(r - foot.distance) <= kTangentBand) return {foot.foot};

    auto g = [&](double t) {
        return geodesic_distance(surface, c, reduce(surface, line.point_at(t)), opts)
                   .distance - r;
    };
    double len = line.length();
    std::vector<ChartPoint> out;
    for (int side : {-1, +1}) {
        double h = std::sqrt(std::max(r * r - foot.distance * foot.distance, 0.0));
        if (h == 0.0) h = r;
        double t_in = foot.foot_param;
        double t_out = t_in + side * h;
        int guard = 0;
        while (true) {
            if (t_out < 0.0 || t_out > len)
                throw GeodesicError("circle intersection bracket exceeds the line extent");
            if (g(t_out) > 0.0) break;
            t_in = t_out;
            t_out += side * h;
            h *= 2.0;
            if (++guard > 60)
                throw GeodesicError("circle intersection bracket failed to grow");
        }
        double lo = t_in, hi = t_out; // g(lo) < 0 <= g(hi) along the side
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (std::abs(g(mid)) <= 1e-9 && std::abs(hi - lo) <= 1e-9) {
                lo = hi = mid;
                break;
            }
            if (g(mid) < 0.0) lo = mid;
            else hi = mid;
            if (std::abs(hi - lo) < 1e-12) break;
        }
        out.push_back(reduce(surface, line.point_at(0.5 * (lo + hi))));
    }
    std::sort(out.begin(), out.end(), [](const ChartPoint& x, const ChartPoint& y) {
        return x.u < y.u || (x.u == y.u && x.v < y.v);
    });
    return out;
}

} // namespace rr
