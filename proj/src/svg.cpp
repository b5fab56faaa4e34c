#include "ktoep/svg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace ktoep {

void SvgPlot::scatter(std::span<const Complex> points, const std::string& color, double radius) {
    Series s;
    s.color = color;
    s.radius = radius;
    s.x.reserve(points.size());
    s.y.reserve(points.size());
    for (const Complex p : points) {
        s.x.push_back(p.real());
        s.y.push_back(p.imag());
    }
    series_.push_back(std::move(s));
}

void SvgPlot::line(std::span<const double> x, std::span<const double> y, const std::string& color) {
    Series s;
    s.is_line = true;
    s.color = color;
    s.x.assign(x.begin(), x.end());
    s.y.assign(y.begin(), y.end());
    series_.push_back(std::move(s));
}

void SvgPlot::write(const std::string& path) const {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : series_) {
        for (const double v : s.x) {
            x0 = std::min(x0, v);
            x1 = std::max(x1, v);
        }
        for (const double v : s.y) {
            y0 = std::min(y0, v);
            y1 = std::max(y1, v);
        }
    }
    if (!(x1 >= x0)) {
        x0 = y0 = -1.0;
        x1 = y1 = 1.0;
    }
    const double padx = 0.05 * std::max(x1 - x0, 1e-12);
    const double pady = 0.05 * std::max(y1 - y0, 1e-12);
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;
    const double margin = 10.0;
    auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width_ - 2 * margin); };
    auto py = [&](double y) { return height_ - margin - (y - y0) / (y1 - y0) * (height_ - 2 * margin); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_
        << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& s : series_) {
        if (s.is_line) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
            for (size_t i = 0; i < s.x.size(); ++i) out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            out << "\"/>\n";
        } else {
            for (size_t i = 0; i < s.x.size(); ++i)
                out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"" << s.radius
                    << "\" fill=\"" << s.color << "\"/>\n";
        }
    }
    out << "</svg>\n";
}

}  // namespace ktoep
