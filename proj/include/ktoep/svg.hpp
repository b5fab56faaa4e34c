#pragma once

#include "ktoep/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace ktoep {

/// Minimal static scatter/line plot. Series are drawn in order; bounds are
/// the union of all data with a small margin.
class SvgPlot {
public:
    SvgPlot(int width = 640, int height = 480) : width_(width), height_(height) {}

    void scatter(std::span<const Complex> points, const std::string& color, double radius = 2.0);
    void line(std::span<const double> x, std::span<const double> y, const std::string& color);
    void write(const std::string& path) const;

private:
    struct Series {
        bool is_line = false;
        std::vector<double> x, y;
        std::string color;
        double radius = 2.0;
    };

    int width_, height_;
    std::vector<Series> series_;
};

}  // namespace ktoep
