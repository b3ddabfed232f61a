#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "kdq/csv.hpp"

namespace kdq {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal line plot: frame, ticks, legend, one polyline per series. CSV is the
// data contract; this is a convenience view of the same numbers.
inline void write_svg(const std::string& path, const std::string& title,
                      const std::vector<PlotSeries>& series) {
    const double width = 820.0, height = 520.0;
    const double left = 70.0, right = 790.0, top = 50.0, bottom = 470.0;
    static const char* palette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#f39c12"};

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return left + (right - left) * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return bottom - (bottom - top) * (y - ymin) / (ymax - ymin); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << 0.5 * width << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int nTicks = 6;
    for (int i = 0; i <= nTicks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / nTicks;
        const double gx = px(fx);
        out << "<line x1=\"" << gx << "\" y1=\"" << bottom << "\" x2=\"" << gx << "\" y2=\""
            << bottom + 6 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << gx << "\" y=\"" << bottom + 22
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx)
            << "</text>\n";
        const double fy = ymin + (ymax - ymin) * i / nTicks;
        const double gy = py(fy);
        out << "<line x1=\"" << left - 6 << "\" y1=\"" << gy << "\" x2=\"" << left << "\" y2=\""
            << gy << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << left - 10 << "\" y=\"" << gy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
            << "</text>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& sr = series[s];
        out << "<polyline fill=\"none\" stroke=\"" << palette[s % 5]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < sr.x.size(); ++i)
            out << num(px(sr.x[i])) << ',' << num(py(sr.y[i])) << ' ';
        out << "\"/>\n";
        const double ly = top + 18.0 * (s + 1);
        out << "<line x1=\"" << right - 150 << "\" y1=\"" << ly << "\" x2=\"" << right - 120
            << "\" y2=\"" << ly << "\" stroke=\"" << palette[s % 5] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << right - 114 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << sr.label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out.good()) throw IoError("write failure on '" + path + "'");
}

}  // namespace kdq
