#ifndef WBELL_SVG_HPP
#define WBELL_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "wbell/scan.hpp"
#include "wbell/types.hpp"

namespace wbell {

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline const char* dash_for(CurveStyle s) {
    switch (s) {
        case CurveStyle::solid: return "";
        case CurveStyle::dot_dashed: return "10,4,2,4";
        default: return "7,5";
    }
}

/// Tick step of roughly (hi - lo) / 5 snapped to a 1/2/5 decade.
inline double tick_step(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

} // namespace detail

/// Writes a self-contained SVG: axes with ticks and labels, region-colored
/// scatter, dash-styled boundary polylines. `max_points` of 0 renders every
/// point; otherwise the scatter is thinned by a deterministic stride.
inline void render_svg(const FigureDataset& ds, const std::filesystem::path& path, int width = 800,
                       int height = 600, std::size_t max_points = 0) {
    if (ds.scatter.empty() && ds.curves.empty())
        throw validation_error("render_svg: empty dataset");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path.string());

    const double ml = 64, mr = 20, mt = 34, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const auto sx = [&](double x) { return ml + (x - ds.x_min) / (ds.x_max - ds.x_min) * pw; };
    const auto sy = [&](double y) { return mt + ph - (y - ds.y_min) / (ds.y_max - ds.y_min) * ph; };
    using detail::svg_num;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << figure_name(ds.id) << ": " << ds.y_label << " vs " << ds.x_label << "</text>\n";

    // axes
    out << "<line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(mt + ph) << "\" x2=\""
        << svg_num(ml + pw) << "\" y2=\"" << svg_num(mt + ph) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(mt) << "\" x2=\"" << svg_num(ml)
        << "\" y2=\"" << svg_num(mt + ph) << "\" stroke=\"black\"/>\n";
    const double xstep = detail::tick_step(ds.x_min, ds.x_max);
    for (double t = ds.x_min; t <= ds.x_max + 1e-9; t += xstep) {
        out << "<line x1=\"" << svg_num(sx(t)) << "\" y1=\"" << svg_num(mt + ph) << "\" x2=\""
            << svg_num(sx(t)) << "\" y2=\"" << svg_num(mt + ph + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << svg_num(sx(t)) << "\" y=\"" << svg_num(mt + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << svg_num(t) << "</text>\n";
    }
    const double ystep = detail::tick_step(ds.y_min, ds.y_max);
    for (double t = ds.y_min; t <= ds.y_max + 1e-9; t += ystep) {
        out << "<line x1=\"" << svg_num(ml - 5) << "\" y1=\"" << svg_num(sy(t)) << "\" x2=\""
            << svg_num(ml) << "\" y2=\"" << svg_num(sy(t)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << svg_num(ml - 8) << "\" y=\"" << svg_num(sy(t) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << svg_num(t)
            << "</text>\n";
    }
    out << "<text x=\"" << svg_num(ml + pw / 2) << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << ds.x_label
        << "</text>\n"
        << "<text x=\"16\" y=\"" << svg_num(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
        << svg_num(mt + ph / 2) << ")\">" << ds.y_label << "</text>\n";

    // scatter, violating green over fulfilling yellow
    const std::size_t stride =
        max_points == 0 ? 1 : std::max<std::size_t>(1, ds.scatter.size() / max_points);
    for (int pass = 0; pass < 2; ++pass) {
        const bool want = pass == 1;
        for (std::size_t k = 0; k < ds.scatter.size(); k += stride) {
            const FigurePoint& p = ds.scatter[k];
            if (p.violating != want) continue;
            out << "<circle cx=\"" << svg_num(sx(p.x)) << "\" cy=\"" << svg_num(sy(p.y))
                << "\" r=\"1.4\" fill=\"" << (p.violating ? "#2e8b57" : "#e0c341")
                << "\" fill-opacity=\"0.55\"/>\n";
        }
    }

    // boundary curves
    for (const FigureCurve& c : ds.curves) {
        const bool blue = c.style == CurveStyle::dashed;
        out << "<path fill=\"none\" stroke=\"" << (blue ? "#1f4fbf" : "black")
            << "\" stroke-width=\"1.6\"";
        if (const char* dash = detail::dash_for(c.style); *dash)
            out << " stroke-dasharray=\"" << dash << "\"";
        out << " d=\"";
        bool first = true;
        for (const auto& pt : c.points) {
            if (pt[0] < ds.x_min - 1e-9 || pt[0] > ds.x_max + 1e-9 || pt[1] < ds.y_min - 1e-9 ||
                pt[1] > ds.y_max + 1e-9) {
                first = true;
                continue;
            }
            out << (first ? 'M' : 'L') << svg_num(sx(pt[0])) << ' ' << svg_num(sy(pt[1])) << ' ';
            first = false;
        }
        out << "\"/>\n";
    }

    out << "</svg>\n";
    if (!out) throw io_error("write failed: " + path.string());
}

} // namespace wbell

#endif // WBELL_SVG_HPP
