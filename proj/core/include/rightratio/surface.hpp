#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rr {

inline constexpr double kPi = std::numbers::pi;

// Chart singularities (cone apex, sphere poles) are excluded by this band.
inline constexpr double kSingularGuard = 1e-9;

enum class SurfaceKind { Plane, Sphere, Torus, Cone };

std::string to_string(SurfaceKind kind);

/// Analytic parametric surface with a fixed chart:
///   plane:  u, v Cartesian lengths
///   sphere: u = colatitude in (0, pi), v = longitude (periodic)
///   torus:  u = tube angle (0 on the outer equator), v = axial angle, both periodic
///   cone:   u = slant distance from the apex, v = azimuth (periodic)
struct SurfaceSpec {
    SurfaceKind kind = SurfaceKind::Plane;
    double sphere_radius = 1.0;      // R
    double torus_center_radius = 2.5; // Rc
    double torus_tube_radius = 0.5;   // rt
    double cone_half_angle = kPi / 6.0; // alpha in (0, pi/2)

    static SurfaceSpec plane();
    static SurfaceSpec sphere(double radius);
    static SurfaceSpec torus(double center_radius, double tube_radius);
    static SurfaceSpec cone(double half_angle);

    bool u_periodic() const { return kind == SurfaceKind::Torus; }
    bool v_periodic() const { return kind != SurfaceKind::Plane; }

    /// Largest r for which geodesics from a point are treated as unique
    /// shortest paths.  Conservative per-surface bounds; the cone bound
    /// depends on the slant distance of the base point.
    double injectivity_bound(double u) const;

    /// Length scale used to normalize r in reports (rt for the torus,
    /// R for the sphere, 1 otherwise).
    double length_scale() const;
};

struct ChartPoint {
    double u = 0.0;
    double v = 0.0;
};

struct MetricTensor {
    double E = 1.0;
    double F = 0.0;
    double G = 1.0;

    double det() const { return E * G - F * F; }
    double norm(double du, double dv) const {
        return std::sqrt(E * du * du + 2.0 * F * du * dv + G * dv * dv);
    }
    double inner(double du1, double dv1, double du2, double dv2) const {
        return E * du1 * du2 + F * (du1 * dv2 + dv1 * du2) + G * dv1 * dv2;
    }
};

/// Second-kind Christoffel symbols; symmetric mixed entries stored once.
struct ChristoffelSymbols {
    double u_uu = 0.0, u_uv = 0.0, u_vv = 0.0;
    double v_uu = 0.0, v_uv = 0.0, v_vv = 0.0;
};

struct TangentVector {
    ChartPoint base;
    double du = 0.0;
    double dv = 0.0;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const;
};

class SingularPointError : public std::domain_error {
public:
    explicit SingularPointError(const std::string& what)
        : std::domain_error(what) {}
};

/// Reduce periodic coordinates to (-pi, pi].
ChartPoint reduce(const SurfaceSpec& surface, ChartPoint p);

bool is_singular(const SurfaceSpec& surface, ChartPoint p);

Vec3 embed(const SurfaceSpec& surface, ChartPoint p);

/// Columns are d(embed)/du and d(embed)/dv.
std::array<Vec3, 2> embedding_jacobian(const SurfaceSpec& surface, ChartPoint p);

MetricTensor metric_at(const SurfaceSpec& surface, ChartPoint p);

ChristoffelSymbols christoffel_at(const SurfaceSpec& surface, ChartPoint p);

/// Central finite differences of metric_at, step 1e-6; cross-check path.
ChristoffelSymbols christoffel_fd(const SurfaceSpec& surface, ChartPoint p,
                                  double step = 1e-6);

double gaussian_curvature(const SurfaceSpec& surface, ChartPoint p);

/// Metric-orthonormal frame at p rotated by phi; phi = 0 aligns e1 with
/// the normalized u direction.
std::array<TangentVector, 2> orthonormal_frame(const SurfaceSpec& surface,
                                               ChartPoint p, double phi);

double metric_norm(const SurfaceSpec& surface, const TangentVector& t);

TangentVector normalized(const SurfaceSpec& surface, const TangentVector& t);

} // namespace rr
