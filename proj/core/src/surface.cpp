#include "rightratio/surface.hpp"

#include <cassert>

namespace rr {

std::string to_string(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::Plane: return "plane";
        case SurfaceKind::Sphere: return "sphere";
        case SurfaceKind::Torus: return "torus";
        case SurfaceKind::Cone: return "cone";
    }
    return "unknown";
}

SurfaceSpec SurfaceSpec::plane() {
    SurfaceSpec s;
    s.kind = SurfaceKind::Plane;
    return s;
}

SurfaceSpec SurfaceSpec::sphere(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    SurfaceSpec s;
    s.kind = SurfaceKind::Sphere;
    s.sphere_radius = radius;
    return s;
}

SurfaceSpec SurfaceSpec::torus(double center_radius, double tube_radius) {
    if (!(center_radius > 0.0) || !(tube_radius > 0.0))
        throw std::invalid_argument("torus radii must be positive");
    if (!(tube_radius < center_radius))
        throw std::invalid_argument("torus requires tube radius < center radius");
    SurfaceSpec s;
    s.kind = SurfaceKind::Torus;
    s.torus_center_radius = center_radius;
    s.torus_tube_radius = tube_radius;
    return s;
}

SurfaceSpec SurfaceSpec::cone(double half_angle) {
    if (!(half_angle > 0.0) || !(half_angle < kPi / 2.0))
        throw std::invalid_argument("cone half-angle must be in (0, pi/2)");
    SurfaceSpec s;
    s.kind = SurfaceKind::Cone;
    s.cone_half_angle = half_angle;
    return s;
}

double SurfaceSpec::injectivity_bound(double u) const {
    switch (kind) {
        case SurfaceKind::Plane: return std::numeric_limits<double>::infinity();
        case SurfaceKind::Sphere: return 0.99 * kPi * sphere_radius;
        case SurfaceKind::Torus: return 0.9 * kPi * torus_tube_radius;
        case SurfaceKind::Cone: return 0.9 * u; // slant distance to the apex
    }
    return 0.0;
}

double SurfaceSpec::length_scale() const {
    switch (kind) {
        case SurfaceKind::Sphere: return sphere_radius;
        case SurfaceKind::Torus: return torus_tube_radius;
        default: return 1.0;
    }
}

Vec3 Vec3::normalized() const {
    double n = norm();
    if (n == 0.0) return {0.0, 0.0, 0.0};
    return *this * (1.0 / n);
}

namespace {

double wrap_angle(double a) {
    // to (-pi, pi]
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    else if (a > kPi) a -= 2.0 * kPi;
    return a;
}

} // namespace

ChartPoint reduce(const SurfaceSpec& surface, ChartPoint p) {
    if (surface.u_periodic()) p.u = wrap_angle(p.u);
    if (surface.v_periodic()) p.v = wrap_angle(p.v);
    return p;
}

bool is_singular(const SurfaceSpec& surface, ChartPoint p) {
    switch (surface.kind) {
        case SurfaceKind::Sphere:
            return p.u < kSingularGuard || p.u > kPi - kSingularGuard;
        case SurfaceKind::Cone:
            return p.u < kSingularGuard;
        default:
            return false;
    }
}

Vec3 embed(const SurfaceSpec& surface, ChartPoint p) {
    switch (surface.kind) {
        case SurfaceKind::Plane:
            return {p.u, p.v, 0.0};
        case SurfaceKind::Sphere: {
            double R = surface.sphere_radius;
            return {R * std::sin(p.u) * std::cos(p.v),
                    R * std::sin(p.u) * std::sin(p.v),
                    R * std::cos(p.u)};
        }
        case SurfaceKind::Torus: {
            double Rc = surface.torus_center_radius;
            double rt = surface.torus_tube_radius;
            double ring = Rc + rt * std::cos(p.u);
            return {ring * std::cos(p.v), ring * std::sin(p.v), rt * std::sin(p.u)};
        }
        case SurfaceKind::Cone: {
            double sa = std::sin(surface.cone_half_angle);
            double ca = std::cos(surface.cone_half_angle);
            return {p.u * sa * std::cos(p.v), p.u * sa * std::sin(p.v), p.u * ca};
        }
    }
    return {};
}

std::array<Vec3, 2> embedding_jacobian(const SurfaceSpec& surface, ChartPoint p) {
    switch (surface.kind) {
        case SurfaceKind::Plane:
            return {Vec3{1, 0, 0}, Vec3{0, 1, 0}};
        case SurfaceKind::Sphere: {
            double R = surface.sphere_radius;
            double su = std::sin(p.u), cu = std::cos(p.u);
            double sv = std::sin(p.v), cv = std::cos(p.v);
            return {Vec3{R * cu * cv, R * cu * sv, -R * su},
                    Vec3{-R * su * sv, R * su * cv, 0.0}};
        }
        case SurfaceKind::Torus: {
            double Rc = surface.torus_center_radius;
            double rt = surface.torus_tube_radius;
            double su = std::sin(p.u), cu = std::cos(p.u);
            double sv = std::sin(p.v), cv = std::cos(p.v);
            double ring = Rc + rt * cu;
            return {Vec3{-rt * su * cv, -rt * su * sv, rt * cu},
                    Vec3{-ring * sv, ring * cv, 0.0}};
        }
        case SurfaceKind::Cone: {
            double sa = std::sin(surface.cone_half_angle);
            double ca = std::cos(surface.cone_half_angle);
            double sv = std::sin(p.v), cv = std::cos(p.v);
            return {Vec3{sa * cv, sa * sv, ca},
                    Vec3{-p.u * sa * sv, p.u * sa * cv, 0.0}};
        }
    }
    return {Vec3{}, Vec3{}};
}

MetricTensor metric_at(const SurfaceSpec& surface, ChartPoint p) {
    if (is_singular(surface, p))
        throw SingularPointError("metric queried at a singular chart point");
    switch (surface.kind) {
        case SurfaceKind::Plane:
            return {1.0, 0.0, 1.0};
        case SurfaceKind::Sphere: {
            double R2 = surface.sphere_radius * surface.sphere_radius;
            double su = std::sin(p.u);
            return {R2, 0.0, R2 * su * su};
        }
        case SurfaceKind::Torus: {
            double rt = surface.torus_tube_radius;
            double ring = surface.torus_center_radius + rt * std::cos(p.u);
            return {rt * rt, 0.0, ring * ring};
        }
        case SurfaceKind::Cone: {
            double sa = std::sin(surface.cone_half_angle);
            return {1.0, 0.0, p.u * p.u * sa * sa};
        }
    }
    return {};
}

ChristoffelSymbols christoffel_at(const SurfaceSpec& surface, ChartPoint p) {
    if (is_singular(surface, p))
        throw SingularPointError("Christoffel symbols queried at a singular chart point");
    ChristoffelSymbols g;
    switch (surface.kind) {
        case SurfaceKind::Plane:
            break;
        case SurfaceKind::Sphere: {
            double su = std::sin(p.u), cu = std::cos(p.u);
            g.u_vv = -su * cu;
            g.v_uv = cu / su;
            break;
        }
        case SurfaceKind::Torus: {
            double rt = surface.torus_tube_radius;
            double su = std::sin(p.u), cu = std::cos(p.u);
            double ring = surface.torus_center_radius + rt * cu;
            g.u_vv = ring * su / rt;
            g.v_uv = -rt * su / ring;
            break;
        }
        case SurfaceKind::Cone: {
            double sa = std::sin(surface.cone_half_angle);
            g.u_vv = -p.u * sa * sa;
            g.v_uv = 1.0 / p.u;
            break;
        }
    }
    return g;
}

ChristoffelSymbols christoffel_fd(const SurfaceSpec& surface, ChartPoint p,
                                  double step) {
    auto m = [&](double u, double v) { return metric_at(surface, {u, v}); };
    MetricTensor mu1 = m(p.u + step, p.v), mu0 = m(p.u - step, p.v);
    MetricTensor mv1 = m(p.u, p.v + step), mv0 = m(p.u, p.v - step);
    double dEdu = (mu1.E - mu0.E) / (2 * step), dEdv = (mv1.E - mv0.E) / (2 * step);
    double dFdu = (mu1.F - mu0.F) / (2 * step), dFdv = (mv1.F - mv0.F) / (2 * step);
    double dGdu = (mu1.G - mu0.G) / (2 * step), dGdv = (mv1.G - mv0.G) / (2 * step);

    MetricTensor mt = metric_at(surface, p);
    double det = mt.det();
    double iE = mt.G / det, iF = -mt.F / det, iG = mt.E / det; // inverse metric

    // First-kind symbols G_{k,ij} = (d_i g_jk + d_j g_ik - d_k g_ij) / 2
    double g_u_uu = 0.5 * dEdu;
    double g_v_uu = dFdu - 0.5 * dEdv;
    double g_u_uv = 0.5 * dEdv;
    double g_v_uv = 0.5 * dGdu;
    double g_u_vv = dFdv - 0.5 * dGdu;
    double g_v_vv = 0.5 * dGdv;

    ChristoffelSymbols g;
    g.u_uu = iE * g_u_uu + iF * g_v_uu;
    g.u_uv = iE * g_u_uv + iF * g_v_uv;
    g.u_vv = iE * g_u_vv + iF * g_v_vv;
    g.v_uu = iF * g_u_uu + iG * g_v_uu;
    g.v_uv = iF * g_u_uv + iG * g_v_uv;
    g.v_vv = iF * g_u_vv + iG * g_v_vv;
    return g;
}

double gaussian_curvature(const SurfaceSpec& surface, ChartPoint p) {
    if (is_singular(surface, p))
        throw SingularPointError("curvature queried at a singular chart point");
    switch (surface.kind) {
        case SurfaceKind::Plane:
            return 0.0;
        case SurfaceKind::Sphere:
            return 1.0 / (surface.sphere_radius * surface.sphere_radius);
        case SurfaceKind::Torus: {
            double rt = surface.torus_tube_radius;
            double ring = surface.torus_center_radius + rt * std::cos(p.u);
            return std::cos(p.u) / (rt * ring);
        }
        case SurfaceKind::Cone:
            return 0.0;
    }
    return 0.0;
}

std::array<TangentVector, 2> orthonormal_frame(const SurfaceSpec& surface,
                                               ChartPoint p, double phi) {
    MetricTensor m = metric_at(surface, p);
    // e1 along u, e2 by Gram-Schmidt of the v direction against e1.
    double e1u = 1.0 / std::sqrt(m.E), e1v = 0.0;
    double proj = m.inner(0.0, 1.0, e1u, e1v);
    double e2u = 0.0 - proj * e1u, e2v = 1.0 - proj * e1v;
    double n2 = m.norm(e2u, e2v);
    e2u /= n2;
    e2v /= n2;

    double c = std::cos(phi), s = std::sin(phi);
    TangentVector f1{p, c * e1u + s * e2u, c * e1v + s * e2v};
    TangentVector f2{p, -s * e1u + c * e2u, -s * e1v + c * e2v};
    return {f1, f2};
}

double metric_norm(const SurfaceSpec& surface, const TangentVector& t) {
    return metric_at(surface, t.base).norm(t.du, t.dv);
}

TangentVector normalized(const SurfaceSpec& surface, const TangentVector& t) {
    double n = metric_norm(surface, t);
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero tangent vector");
    return {t.base, t.du / n, t.dv / n};
}

} // namespace rr
