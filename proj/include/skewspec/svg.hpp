#pragma once

#include <string>
#include <utility>
#include <vector>

namespace skewspec {

// Self-contained SVG 1.1 scatter/line plot, 800x800, fixed margins, no
// external resources.  Elements render in insertion order and all numbers are
// written with one decimal of screen precision, so output is byte-stable.
class SvgPlot {
public:
    SvgPlot(double x_min, double x_max, double y_min, double y_max);

    void set_title(const std::string& t) { title_ = t; }
    void set_axis_labels(const std::string& x, const std::string& y) {
        x_label_ = x;
        y_label_ = y;
    }

    // Circle in *data* coordinates (rendered as an ellipse when the two axes
    // have different scales), e.g. the unit circle of a spectrum plot.
    void add_circle_guide(double cx, double cy, double r, const std::string& color);

    void add_point(double x, double y, const std::string& color, double radius_px = 2.0);
    void add_marker(double x, double y, const std::string& color);  // + shaped
    void add_polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color);
    void add_legend_entry(const std::string& color, const std::string& text);

    std::string render() const;
    void save(const std::string& path) const;

    // Distinct fill colors for data series.
    static const char* palette(std::size_t index);
    // Diverging blue/red hex color for t in [-1, 1]; used for sphere shading.
    static std::string diverging_color(double t);

private:
    double sx(double x) const;
    double sy(double y) const;

    double x_min_, x_max_, y_min_, y_max_;
    std::string title_, x_label_, y_label_;
    std::string body_;
    std::vector<std::pair<std::string, std::string>> legend_;
};

}  // namespace skewspec
