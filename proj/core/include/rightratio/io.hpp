#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rightratio/ratio.hpp"

namespace rr {

/// Locale-independent decimal formatting, 17 significant digits.
std::string format_double(double value);

/// Header: r,r_over_scale,ratio,chord,converged,K_analytic
void write_ratio_csv(std::ostream& out, const RatioCurve& curve);

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal line plot: axes, one polyline per series, and a horizontal
/// reference rule.
void write_svg_plot(std::ostream& out, const std::vector<SvgSeries>& series,
                    double reference_y, const std::string& x_label,
                    const std::string& y_label);

} // namespace rr
