#include "rightratio/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rr {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_ratio_csv(std::ostream& out, const RatioCurve& curve) {
    out << "r,r_over_scale,ratio,chord,converged,K_analytic\n";
    double scale = curve.surface.length_scale();
    double k = gaussian_curvature(curve.surface, curve.base);
    for (const auto& s : curve.samples) {
        out << format_double(s.r) << ',' << format_double(s.r / scale) << ','
            << format_double(s.ratio) << ',' << format_double(s.chord) << ','
            << (s.converged ? 1 : 0) << ',' << format_double(k) << '\n';
    }
}

void write_svg_plot(std::ostream& out, const std::vector<SvgSeries>& series,
                    double reference_y, const std::string& x_label,
                    const std::string& y_label) {
    constexpr double w = 640, h = 480;
    constexpr double ml = 70, mr = 20, mt = 20, mb = 50;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = reference_y, ymax = reference_y;
    for (const auto& s : series) {
        for (double x : s.x) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
        for (double y : s.y) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    double pad = 0.05 * (ymax - ymin);
    if (pad == 0.0) pad = 0.05;
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
        << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
        << (mt + h - mb) / 2 << ")\">" << y_label << "</text>\n";
    // axis extent labels
    out << "<text x=\"" << ml << "\" y=\"" << h - mb + 18
        << "\" font-size=\"11\">" << format_double(xmin) << "</text>\n";
    out << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 18
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(xmax)
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(ymin)
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymin)
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(ymax)
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymax)
        << "</text>\n";
    // reference rule
    out << "<line x1=\"" << ml << "\" y1=\"" << py(reference_y) << "\" x2=\""
        << w - mr << "\" y2=\"" << py(reference_y)
        << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";

    const char* colors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad"};
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        out << "<polyline fill=\"none\" stroke=\"" << colors[i % 4]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < s.x.size(); ++j)
            out << px(s.x[j]) << ',' << py(s.y[j]) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << w - mr - 8 << "\" y=\"" << mt + 18 + 16 * i
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[i % 4]
            << "\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace rr
