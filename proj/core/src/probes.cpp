#include "rightratio/probes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "rightratio/parallel.hpp"

namespace rr {

namespace {

ChartPoint random_base_point(const SurfaceSpec& surface, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (surface.kind) {
        case SurfaceKind::Plane:
            return {4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0};
        case SurfaceKind::Sphere:
            // keep the trial ball clear of the chart poles
            return {kPi * (0.3 + 0.4 * unit(rng)), 2.0 * kPi * unit(rng) - kPi};
        case SurfaceKind::Torus:
            return {2.0 * kPi * unit(rng) - kPi, 2.0 * kPi * unit(rng) - kPi};
        case SurfaceKind::Cone:
            return {0.5 + 1.5 * unit(rng), 2.0 * kPi * unit(rng) - kPi};
    }
    return {};
}

} // namespace

ProbeReport metric_axioms_check(const SurfaceSpec& surface, std::size_t trials,
                                std::uint64_t seed, const DistanceOptions& opts) {
    ProbeReport report;
    report.name = "metric_axioms";
    report.trials = trials;

    struct Trial {
        ChartPoint a, b, c;
        bool valid = false;
    };
    std::vector<Trial> inputs(trials);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& t : inputs) {
        ChartPoint base = random_base_point(surface, rng);
        double ball = 0.3 * surface.injectivity_bound(base.u);
        if (surface.kind == SurfaceKind::Plane) ball = 1.0;
        ChartPoint pts[3];
        bool ok = true;
        for (auto& p : pts) {
            double phi = 2.0 * kPi * unit(rng);
            double rad = ball * unit(rng);
            try {
                if (rad < 1e-12) {
                    p = base;
                } else {
                    p = exp_map(surface, base, orthonormal_frame(surface, base, phi)[0], rad);
                }
            } catch (const GeodesicError&) {
                ok = false;
            } catch (const SingularPointError&) {
                ok = false;
            }
        }
        t.a = pts[0];
        t.b = pts[1];
        t.c = pts[2];
        t.valid = ok;
    }

    struct Outcome {
        bool skipped = false;
        std::vector<ViolationDetail> viols;
    };
    std::vector<Outcome> outcomes(trials);
    parallel_for(trials, [&](std::size_t i) {
        const Trial& t = inputs[i];
        Outcome& out = outcomes[i];
        if (!t.valid) {
            out.skipped = true;
            return;
        }
        auto dist = [&](ChartPoint x, ChartPoint y, bool& conv) {
            ShootingResult r = geodesic_distance(surface, x, y, opts);
            conv = conv && r.converged;
            return r.distance;
        };
        bool conv = true;
        double daa = dist(t.a, t.a, conv);
        double dab = dist(t.a, t.b, conv);
        double dba = dist(t.b, t.a, conv);
        double dac = dist(t.a, t.c, conv);
        double dcb = dist(t.c, t.b, conv);
        if (!conv) {
            out.skipped = true;
            return;
        }
        if (daa > 1e-9)
            out.viols.push_back({i, "d(A,A) != 0", daa - 1e-9});
        double sym = std::abs(dab - dba) - 1e-8 * (1.0 + dab);
        if (sym > 0.0)
            out.viols.push_back({i, "d(A,B) != d(B,A)", sym});
        double tri = dab - (dac + dcb) - 1e-8;
        if (tri > 0.0)
            out.viols.push_back({i, "triangle inequality", tri});
    });

    for (auto& out : outcomes) {
        if (out.skipped) {
            ++report.skipped;
            continue;
        }
        for (auto& v : out.viols) {
            ++report.violations;
            report.worst_slack = std::max(report.worst_slack, v.slack);
            if (report.details.size() < 32) report.details.push_back(v);
        }
    }
    return report;
}

ProbeReport perpendicular_uniqueness_check(const SurfaceSpec& surface,
                                           ChartPoint c, const GeodesicPath& line,
                                           const DistanceOptions& opts) {
    ProbeReport report;
    report.name = "perpendicular_uniqueness";

    constexpr std::size_t kGrid = 101;
    double len = line.length();
    std::vector<double> d(kGrid);
    for (std::size_t i = 0; i < kGrid; ++i) {
        double t = len * static_cast<double>(i) / (kGrid - 1);
        d[i] = geodesic_distance(surface, c, reduce(surface, line.point_at(t)), opts)
                   .distance;
    }
    report.trials = kGrid;

    std::size_t min_idx =
        static_cast<std::size_t>(std::min_element(d.begin(), d.end()) - d.begin());
    if (min_idx == 0 || min_idx == kGrid - 1)
        throw GeodesicError("perpendicular probe: minimum at the line boundary");

    // strict decrease before the minimum, strict increase after
    constexpr double kMonotoneTol = 1e-10;
    for (std::size_t i = 0; i + 1 < kGrid; ++i) {
        double step = d[i + 1] - d[i];
        double slack = (i + 1 <= min_idx) ? step + kMonotoneTol : -step + kMonotoneTol;
        if (slack > 0.0 && i + 1 != min_idx && i != min_idx) {
            ++report.violations;
            report.worst_slack = std::max(report.worst_slack, slack);
            if (report.details.size() < 32)
                report.details.push_back({i, "non-monotone distance along line", slack});
        }
    }

    PerpendicularFoot foot = foot_of_perpendicular(surface, c, line, opts);
    GeodesicState at_foot = line.state_at(foot.foot_param);
    TangentVector along{foot.foot, at_foot.du_ds, at_foot.dv_ds};
    ShootingResult back = geodesic_distance(surface, foot.foot, c, opts);
    double r_small = 0.01 * surface.length_scale();
    RatioSample perp = angle_distance_ratio(surface, foot.foot,
                                            normalized(surface, along),
                                            back.launch, r_small, opts);
    ++report.trials;
    double dev = std::abs(perp.ratio - 0.5) - 1e-4;
    if (!perp.converged || dev > 0.0) {
        ++report.violations;
        report.worst_slack = std::max(report.worst_slack, dev);
        report.details.push_back({kGrid, "foot angle ratio not 1/2", dev});
    }
    return report;
}

std::string to_string(RoundRelation rel) {
    switch (rel) {
        case RoundRelation::ExclusivelyOutside: return "exclusively-outside";
        case RoundRelation::InclusivelyOutside: return "inclusively-outside";
        case RoundRelation::Intersecting: return "intersecting";
        case RoundRelation::InclusivelyInside: return "inclusively-inside";
        case RoundRelation::ExclusivelyInside: return "exclusively-inside";
        case RoundRelation::Degenerate: return "degenerate";
    }
    return "unknown";
}

int intersection_count(RoundRelation rel) {
    switch (rel) {
        case RoundRelation::ExclusivelyOutside:
        case RoundRelation::ExclusivelyInside:
            return 0;
        case RoundRelation::InclusivelyOutside:
        case RoundRelation::InclusivelyInside:
            return 1;
        case RoundRelation::Intersecting:
            return 2;
        case RoundRelation::Degenerate:
            return 0;
    }
    return 0;
}

RoundRelation round_intersection_check(double r_a, double r_b, double d_ab) {
    if (r_a < 0.0 || r_b < 0.0 || d_ab < 0.0)
        throw std::invalid_argument("round radii and distance must be nonnegative");
    if (r_a == 0.0 && r_b == 0.0 && d_ab == 0.0) return RoundRelation::Degenerate;
    double sum = r_a + r_b;
    double gap = std::abs(r_a - r_b);
    if (d_ab > sum) return RoundRelation::ExclusivelyOutside;
    if (d_ab == sum) return RoundRelation::InclusivelyOutside;
    if (d_ab > gap) return RoundRelation::Intersecting;
    if (d_ab == gap) return RoundRelation::InclusivelyInside;
    return RoundRelation::ExclusivelyInside;
}

SquareReport square_construction(const SurfaceSpec& surface, ChartPoint center,
                                 double half_diagonal, double phi,
                                 const DistanceOptions& opts) {
    if (!(half_diagonal > 0.0))
        throw std::invalid_argument("half diagonal must be positive");
    auto frame = orthonormal_frame(surface, center, phi);
    TangentVector e1 = frame[0], e2 = frame[1];
    TangentVector ne1{center, -e1.du, -e1.dv};
    TangentVector ne2{center, -e2.du, -e2.dv};

    SquareReport rep;
    rep.center = center;
    rep.a = exp_map(surface, center, e1, half_diagonal);
    rep.b = exp_map(surface, center, ne1, half_diagonal);
    rep.c = exp_map(surface, center, e2, half_diagonal);
    rep.d = exp_map(surface, center, ne2, half_diagonal);

    auto leg = [&](ChartPoint from, ChartPoint to, ChartPoint& midpoint) {
        ShootingResult r = geodesic_distance(surface, from, to, opts);
        midpoint = exp_map(surface, from, r.launch, 0.5 * r.distance);
        return r.distance;
    };
    rep.side_ac = leg(rep.a, rep.c, rep.e);
    rep.side_cb = leg(rep.c, rep.b, rep.f);
    rep.side_bd = leg(rep.b, rep.d, rep.g);
    rep.side_da = leg(rep.d, rep.a, rep.h);
    rep.diagonal_ab = geodesic_distance(surface, rep.a, rep.b, opts).distance;
    rep.diagonal_cd = geodesic_distance(surface, rep.c, rep.d, opts).distance;

    double r_measure = 0.1 * half_diagonal;
    auto corner = [&](ChartPoint at, ChartPoint to1, ChartPoint to2) {
        TangentVector d1 = geodesic_distance(surface, at, to1, opts).launch;
        TangentVector d2 = geodesic_distance(surface, at, to2, opts).launch;
        return angle_distance_ratio(surface, at, d1, d2, r_measure, opts).ratio;
    };
    rep.corner_ratio_a = corner(rep.a, rep.c, rep.d);
    rep.corner_ratio_c = corner(rep.c, rep.a, rep.b);
    rep.corner_ratio_b = corner(rep.b, rep.c, rep.d);
    rep.corner_ratio_d = corner(rep.d, rep.b, rep.a);

    double flat_side = half_diagonal * std::sqrt(2.0);
    double dev = 0.0;
    for (double s : {rep.side_ac, rep.side_cb, rep.side_bd, rep.side_da})
        dev = std::max(dev, std::abs(s - flat_side));
    for (double diag : {rep.diagonal_ab, rep.diagonal_cd})
        dev = std::max(dev, std::abs(diag - 2.0 * half_diagonal));
    for (double q : {rep.corner_ratio_a, rep.corner_ratio_c, rep.corner_ratio_b,
                     rep.corner_ratio_d})
        dev = std::max(dev, std::abs(q - 0.5));
    rep.max_flat_deviation = dev;
    return rep;
}

} // namespace rr
