#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "uent/harness.hpp"

namespace uent::harness {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<Curve>& curves) {
    if (curves.empty()) throw std::invalid_argument("render_line_chart: no curves");

    constexpr int width = 720, height = 480;
    constexpr int ml = 70, mr = 170, mt = 40, mb = 55;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Curve& c : curves)
        for (const auto& [x, y] : c.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return mt + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << (ml + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << ml << "\" y1=\"" << (mt + ph) << "\" x2=\"" << (ml + pw)
        << "\" y2=\"" << (mt + ph) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << (mt + ph)
        << "\" stroke=\"black\"/>\n";

    constexpr int n_ticks = 6;
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / n_ticks;
        const double gx = px(fx);
        svg << "<line x1=\"" << gx << "\" y1=\"" << (mt + ph) << "\" x2=\"" << gx << "\" y2=\""
            << (mt + ph + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << gx << "\" y=\"" << (mt + ph + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fx)
            << "</text>\n";
        const double fy = ymin + (ymax - ymin) * i / n_ticks;
        const double gy = py(fy);
        svg << "<line x1=\"" << (ml - 5) << "\" y1=\"" << gy << "\" x2=\"" << ml << "\" y2=\"" << gy
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << (ml - 8) << "\" y=\"" << (gy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fy)
            << "</text>\n";
    }
    svg << "<text x=\"" << (ml + pw / 2) << "\" y=\"" << (height - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << (mt + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << (mt + ph / 2) << ")\">" << y_label << "</text>\n";

    for (const Curve& c : curves) {
        svg << "<polyline fill=\"none\" stroke=\"" << c.stroke << "\" stroke-width=\"1.8\"";
        if (!c.dash.empty()) svg << " stroke-dasharray=\"" << c.dash << "\"";
        svg << " points=\"";
        for (const auto& [x, y] : c.points) svg << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
        svg << "\"/>\n";
    }

    // Legend.
    double ly = mt + 10;
    for (const Curve& c : curves) {
        const double lx = ml + pw + 14;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << (lx + 30) << "\" y2=\"" << ly
            << "\" stroke=\"" << c.stroke << "\" stroke-width=\"1.8\"";
        if (!c.dash.empty()) svg << " stroke-dasharray=\"" << c.dash << "\"";
        svg << "/>\n";
        svg << "<text x=\"" << (lx + 36) << "\" y=\"" << (ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << c.label << "</text>\n";
        ly += 20;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace uent::harness
