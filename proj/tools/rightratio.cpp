#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rightratio/io.hpp"
#include "rightratio/probes.hpp"
#include "rightratio/ratio.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitPartialConvergence = 3;
constexpr int kExitDegenerateFit = 4;
constexpr int kExitAxiomViolation = 5;

struct SurfaceFlags {
    std::string kind = "plane";
    double sphere_r = 1.0;
    double torus_rc = 2.5;
    double torus_rt = 0.5;
    double cone_alpha = rr::kPi / 6.0;

    void attach(CLI::App* app) {
        app->add_option("--surface", kind, "plane|sphere|torus|cone")
            ->check(CLI::IsMember({"plane", "sphere", "torus", "cone"}));
        app->add_option("--R", sphere_r, "sphere radius");
        app->add_option("--Rc", torus_rc, "torus center radius");
        app->add_option("--rt", torus_rt, "torus tube radius");
        app->add_option("--alpha", cone_alpha, "cone half-angle (radians)");
    }

    rr::SurfaceSpec build() const {
        if (kind == "plane") return rr::SurfaceSpec::plane();
        if (kind == "sphere") return rr::SurfaceSpec::sphere(sphere_r);
        if (kind == "torus") return rr::SurfaceSpec::torus(torus_rc, torus_rt);
        return rr::SurfaceSpec::cone(cone_alpha);
    }
};

rr::ChartPoint parse_point(const rr::SurfaceSpec& surface, const std::string& text) {
    if (text == "inner") {
        if (surface.kind != rr::SurfaceKind::Torus)
            throw CLI::ValidationError("--point", "'inner' is a torus preset");
        return {rr::kPi, 0.0};
    }
    if (text == "outer") {
        if (surface.kind != rr::SurfaceKind::Torus)
            throw CLI::ValidationError("--point", "'outer' is a torus preset");
        return {0.0, 0.0};
    }
    if (text == "equator") {
        if (surface.kind != rr::SurfaceKind::Sphere)
            throw CLI::ValidationError("--point", "'equator' is a sphere preset");
        return {rr::kPi / 2.0, 0.0};
    }
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--point", "expected 'u,v' or a named preset");
    try {
        double u = std::stod(text.substr(0, comma));
        double v = std::stod(text.substr(comma + 1));
        return rr::reduce(surface, {u, v});
    } catch (const std::exception&) {
        throw CLI::ValidationError("--point", "could not parse coordinates");
    }
}

// "min:max:count"
std::vector<double> parse_grid(const std::string& text, bool log_spaced) {
    double lo = 0, hi = 0;
    std::size_t count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':')
        throw CLI::ValidationError("--r", "expected min:max:count");
    if (!(lo > 0.0) || hi < lo || count < 1)
        throw CLI::ValidationError("--r", "need 0 < min <= max and count >= 1");
    return log_spaced ? rr::log_grid(lo, hi, count) : rr::linear_grid(lo, hi, count);
}

int write_curve_csv(const rr::RatioCurve& curve, const std::string& path) {
    if (path.empty()) {
        rr::write_ratio_csv(std::cout, curve);
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file " << path << "\n";
            return kExitBadConfig;
        }
        rr::write_ratio_csv(out, curve);
    }
    return curve.converged_count() == curve.samples.size() ? kExitOk
                                                          : kExitPartialConvergence;
}

void write_curve_svg(const std::vector<rr::RatioCurve>& curves,
                     const std::string& path) {
    std::vector<rr::SvgSeries> series;
    for (const auto& c : curves) {
        rr::SvgSeries s;
        s.label = rr::to_string(c.surface.kind) + " (" +
                  rr::format_double(c.base.u) + ", " + rr::format_double(c.base.v) +
                  ")";
        double scale = c.surface.length_scale();
        for (const auto& sm : c.samples) {
            if (!sm.converged) continue;
            s.x.push_back(sm.r / scale);
            s.y.push_back(sm.ratio);
        }
        series.push_back(std::move(s));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--svg", "cannot open " + path);
    rr::write_svg_plot(out, series, 0.5, "r / scale", "right ratio");
}

int cmd_curvature(const rr::SurfaceSpec& surface, rr::ChartPoint p, double phi,
                  const std::string& out_path) {
    rr::RatioCurve curve =
        rr::ratio_curve(surface, p, phi, rr::default_fit_grid(surface, p));
    rr::CurvatureEstimate est;
    try {
        est = rr::estimate_curvature(curve);
    } catch (const rr::DegenerateCurveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerateFit;
    }
    double k = rr::gaussian_curvature(surface, p);
    double rel = k != 0.0 ? std::abs(est.curvature - k) / std::abs(k)
                          : std::abs(est.curvature);
    std::cout << "surface:        " << rr::to_string(surface.kind) << "\n"
              << "point:          (" << rr::format_double(p.u) << ", "
              << rr::format_double(p.v) << ")\n"
              << "K_estimate:     " << rr::format_double(est.curvature) << "\n"
              << "K_analytic:     " << rr::format_double(k) << "\n"
              << (k != 0.0 ? "rel_error:      " : "abs_error:      ")
              << rr::format_double(rel) << "\n"
              << "fit_residual:   " << rr::format_double(est.residual_rms) << "\n"
              << "c1_bound:       " << rr::format_double(std::abs(est.c1) * est.r_max)
              << "\n"
              << "fit_r_range:    [" << rr::format_double(est.r_min) << ", "
              << rr::format_double(est.r_max) << "]\n";
    if (!out_path.empty()) {
        bool fresh = !std::filesystem::exists(out_path);
        std::ofstream out(out_path, std::ios::binary | std::ios::app);
        if (!out) {
            std::cerr << "error: cannot open output file " << out_path << "\n";
            return kExitBadConfig;
        }
        if (fresh)
            out << "surface,u,v,K_estimate,K_analytic,error,residual_rms,c1_bound\n";
        out << rr::to_string(surface.kind) << ',' << rr::format_double(p.u) << ','
            << rr::format_double(p.v) << ',' << rr::format_double(est.curvature)
            << ',' << rr::format_double(k) << ',' << rr::format_double(rel) << ','
            << rr::format_double(est.residual_rms) << ','
            << rr::format_double(std::abs(est.c1) * est.r_max) << '\n';
    }
    return kExitOk;
}

int cmd_axioms(const rr::SurfaceSpec& surface, std::size_t trials,
               std::uint64_t seed) {
    std::vector<rr::ProbeReport> reports;
    reports.push_back(rr::metric_axioms_check(surface, trials, seed));

    if (trials > 0) {
        // perpendicular probe on a canonical configuration per surface
        rr::ChartPoint line_start, c;
        double line_len;
        switch (surface.kind) {
            case rr::SurfaceKind::Plane:
                line_start = {-2.0, 0.0};
                c = {0.0, 1.0};
                line_len = 4.0;
                break;
            case rr::SurfaceKind::Sphere:
                line_start = {rr::kPi / 2.0, -0.5};
                c = {rr::kPi / 4.0, 0.0};
                line_len = surface.sphere_radius;
                break;
            case rr::SurfaceKind::Torus:
                line_start = {0.0, -0.1};
                c = {0.6, 0.0};
                line_len = 0.2 * (surface.torus_center_radius + surface.torus_tube_radius);
                break;
            case rr::SurfaceKind::Cone:
                line_start = {1.5, -0.3};
                c = {1.0, 0.0};
                line_len = 0.9;
                break;
        }
        auto frame = rr::orthonormal_frame(surface, line_start, 0.0);
        // advance along the v direction
        rr::GeodesicPath line =
            rr::integrate_geodesic(surface, line_start, frame[1], line_len);
        reports.push_back(rr::perpendicular_uniqueness_check(surface, c, line));

        // round classification sweep against brute-force planar intersection
        rr::ProbeReport rounds;
        rounds.name = "round_intersections";
        for (int i = 0; i < 12; ++i) {
            for (int j = 0; j < 12; ++j) {
                for (int k = 0; k < 12; ++k) {
                    double ra = 0.25 * i, rb = 0.125 + 0.25 * j, d = 0.125 * k;
                    ++rounds.trials;
                    rr::RoundRelation rel = rr::round_intersection_check(ra, rb, d);
                    // planar circle-circle intersection count
                    int count;
                    if (d == 0.0) {
                        count = 0; // concentric, distinct radii
                    } else {
                        double a = (d * d + ra * ra - rb * rb) / (2.0 * d);
                        double h2 = ra * ra - a * a;
                        count = h2 > 1e-12 ? 2 : (h2 >= -1e-12 ? 1 : 0);
                    }
                    if (count != rr::intersection_count(rel)) {
                        ++rounds.violations;
                        if (rounds.details.size() < 16)
                            rounds.details.push_back(
                                {rounds.trials, "count mismatch at " +
                                     rr::format_double(ra) + "," +
                                     rr::format_double(rb) + "," +
                                     rr::format_double(d), 1.0});
                    }
                }
            }
        }
        reports.push_back(rounds);
    }

    std::size_t total_violations = 0;
    std::cout << "probe                      trials  skipped  violations  worst_slack  result\n";
    for (const auto& r : reports) {
        total_violations += r.violations;
        std::printf("%-26s %6zu  %7zu  %10zu  %11.3g  %s\n", r.name.c_str(),
                    r.trials, r.skipped, r.violations, r.worst_slack,
                    r.passed() ? "pass" : "FAIL");
        for (const auto& d : r.details)
            std::cout << "    trial " << d.trial << ": " << d.what
                      << " (slack " << rr::format_double(d.slack) << ")\n";
    }
    return total_violations == 0 ? kExitOk : kExitAxiomViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"right-ratio curvature analytics on analytic surfaces"};
    app.require_subcommand(1);

    // ratio
    auto* ratio_cmd = app.add_subcommand("ratio", "right-ratio curve as CSV");
    SurfaceFlags ratio_surface;
    ratio_surface.attach(ratio_cmd);
    std::string ratio_point = "0,0", ratio_grid, ratio_grid_log, ratio_out, ratio_svg;
    double ratio_phi = 0.0;
    ratio_cmd->add_option("--point", ratio_point, "u,v or inner|outer|equator");
    ratio_cmd->add_option("--phi", ratio_phi, "frame angle (radians)");
    ratio_cmd->add_option("--r", ratio_grid, "linear grid min:max:count");
    ratio_cmd->add_option("--r-log", ratio_grid_log, "log grid min:max:count");
    ratio_cmd->add_option("--out", ratio_out, "output CSV path (default stdout)");
    ratio_cmd->add_option("--svg", ratio_svg, "optional SVG plot path");

    // fig2
    auto* fig2_cmd = app.add_subcommand(
        "fig2", "torus inner/outer right-ratio curves (inner radius 2, outer 3)");
    double fig2_rc = 2.5, fig2_rt = 0.5;
    std::string fig2_dir = ".", fig2_svg;
    fig2_cmd->add_option("--Rc", fig2_rc, "torus center radius");
    fig2_cmd->add_option("--rt", fig2_rt, "torus tube radius");
    fig2_cmd->add_option("--out-dir", fig2_dir, "directory for inner.csv/outer.csv");
    fig2_cmd->add_option("--svg", fig2_svg, "optional SVG plot path");

    // curvature
    auto* curv_cmd = app.add_subcommand("curvature",
                                        "recover Gaussian curvature from the ratio curve");
    SurfaceFlags curv_surface;
    curv_surface.attach(curv_cmd);
    std::string curv_point = "0,0", curv_out;
    double curv_phi = 0.0;
    curv_cmd->add_option("--point", curv_point, "u,v or inner|outer|equator");
    curv_cmd->add_option("--phi", curv_phi, "frame angle (radians)");
    curv_cmd->add_option("--out", curv_out, "append a CSV row to this path");

    // axioms
    auto* ax_cmd = app.add_subcommand("axioms", "numeric axiom probe suite");
    SurfaceFlags ax_surface;
    ax_surface.attach(ax_cmd);
    std::size_t ax_trials = 1000;
    std::uint64_t ax_seed = 0;
    ax_cmd->add_option("--trials", ax_trials, "random trials per probe");
    ax_cmd->add_option("--seed", ax_seed, "64-bit seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (ratio_cmd->parsed()) {
            rr::SurfaceSpec surface = ratio_surface.build();
            rr::ChartPoint p = parse_point(surface, ratio_point);
            std::vector<double> grid;
            if (!ratio_grid_log.empty()) grid = parse_grid(ratio_grid_log, true);
            else if (!ratio_grid.empty()) grid = parse_grid(ratio_grid, false);
            else {
                std::cerr << "error: one of --r / --r-log is required\n";
                return kExitBadConfig;
            }
            rr::RatioCurve curve = rr::ratio_curve(surface, p, ratio_phi, grid);
            if (!ratio_svg.empty()) write_curve_svg({curve}, ratio_svg);
            return write_curve_csv(curve, ratio_out);
        }
        if (fig2_cmd->parsed()) {
            rr::SurfaceSpec surface = rr::SurfaceSpec::torus(fig2_rc, fig2_rt);
            double rt = fig2_rt;
            std::vector<double> grid = rr::log_grid(0.01 * rt, 0.45 * rr::kPi * rt, 50);
            rr::RatioCurve inner = rr::ratio_curve(surface, {rr::kPi, 0.0}, 0.0, grid);
            rr::RatioCurve outer = rr::ratio_curve(surface, {0.0, 0.0}, 0.0, grid);
            std::filesystem::create_directories(fig2_dir);
            int rc = kExitOk;
            for (auto& [curve, name] :
                 {std::pair<rr::RatioCurve&, const char*>{inner, "inner.csv"},
                  std::pair<rr::RatioCurve&, const char*>{outer, "outer.csv"}}) {
                int c = write_curve_csv(
                    curve, (std::filesystem::path(fig2_dir) / name).string());
                rc = std::max(rc, c);
            }
            if (!fig2_svg.empty()) write_curve_svg({inner, outer}, fig2_svg);
            return rc;
        }
        if (curv_cmd->parsed()) {
            rr::SurfaceSpec surface = curv_surface.build();
            rr::ChartPoint p = parse_point(surface, curv_point);
            return cmd_curvature(surface, p, curv_phi, curv_out);
        }
        if (ax_cmd->parsed()) {
            return cmd_axioms(ax_surface.build(), ax_trials, ax_seed);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
