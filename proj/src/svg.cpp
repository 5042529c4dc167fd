#include "skewspec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "skewspec/csv.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 70.0;
constexpr double kPlot = kSize - 2 * kMargin;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Short tick label: strips the noise of full round-trip output.
std::string tick_label(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    double a = std::abs(v);
    if (a >= 0.01 && a < 10000.0) {
        std::snprintf(buf, sizeof buf, "%.4g", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.2e", v);
    }
    return buf;
}

}  // namespace

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
    if (!(x_max_ > x_min_) || !(y_max_ > y_min_)) {
        throw ConfigError("svg plot needs a nonempty axis range");
    }
}

double SvgPlot::sx(double x) const { return kMargin + (x - x_min_) / (x_max_ - x_min_) * kPlot; }
double SvgPlot::sy(double y) const { return kMargin + (y_max_ - y) / (y_max_ - y_min_) * kPlot; }

void SvgPlot::add_circle_guide(double cx, double cy, double r, const std::string& color) {
    double rx = r / (x_max_ - x_min_) * kPlot;
    double ry = r / (y_max_ - y_min_) * kPlot;
    body_ += "<ellipse cx=\"" + px(sx(cx)) + "\" cy=\"" + px(sy(cy)) + "\" rx=\"" + px(rx) +
             "\" ry=\"" + px(ry) + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-dasharray=\"4 3\"/>\n";
}

void SvgPlot::add_point(double x, double y, const std::string& color, double radius_px) {
    double X = sx(x), Y = sy(y);
    if (X < kMargin - 1 || X > kSize - kMargin + 1 || Y < kMargin - 1 || Y > kSize - kMargin + 1) {
        return;  // clip instead of drawing outside the frame
    }
    body_ += "<circle cx=\"" + px(X) + "\" cy=\"" + px(Y) + "\" r=\"" + px(radius_px) +
             "\" fill=\"" + color + "\"/>\n";
}

void SvgPlot::add_marker(double x, double y, const std::string& color) {
    double X = sx(x), Y = sy(y);
    if (X < kMargin || X > kSize - kMargin || Y < kMargin || Y > kSize - kMargin) return;
    body_ += "<path d=\"M" + px(X - 4) + " " + px(Y) + "H" + px(X + 4) + "M" + px(X) + " " +
             px(Y - 4) + "V" + px(Y + 4) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
}

void SvgPlot::add_polyline(const std::vector<std::pair<double, double>>& pts,
                           const std::string& color) {
    if (pts.size() < 2) return;
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        d += (i == 0 ? "M" : "L");
        d += px(sx(pts[i].first)) + " " + px(sy(pts[i].second));
    }
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
}

void SvgPlot::add_legend_entry(const std::string& color, const std::string& text) {
    legend_.emplace_back(color, text);
}

std::string SvgPlot::render() const {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
           "height=\"800\" viewBox=\"0 0 800 800\">\n";
    out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

    // frame and ticks
    out += "<rect x=\"" + px(kMargin) + "\" y=\"" + px(kMargin) + "\" width=\"" + px(kPlot) +
           "\" height=\"" + px(kPlot) + "\" fill=\"none\" stroke=\"black\"/>\n";
    const int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        double fx = x_min_ + (x_max_ - x_min_) * t / ticks;
        double fy = y_min_ + (y_max_ - y_min_) * t / ticks;
        double X = kMargin + kPlot * t / ticks;
        double Y = kMargin + kPlot - kPlot * t / ticks;
        out += "<line x1=\"" + px(X) + "\" y1=\"" + px(kSize - kMargin) + "\" x2=\"" + px(X) +
               "\" y2=\"" + px(kSize - kMargin + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + px(X) + "\" y=\"" + px(kSize - kMargin + 20) +
               "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
               escape_text(tick_label(fx)) + "</text>\n";
        out += "<line x1=\"" + px(kMargin - 5) + "\" y1=\"" + px(Y) + "\" x2=\"" + px(kMargin) +
               "\" y2=\"" + px(Y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + px(kMargin - 8) + "\" y=\"" + px(Y + 4) +
               "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">" +
               escape_text(tick_label(fy)) + "</text>\n";
    }

    if (!title_.empty()) {
        out += "<text x=\"400\" y=\"40\" font-size=\"18\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\">" +
               escape_text(title_) + "</text>\n";
    }
    if (!x_label_.empty()) {
        out += "<text x=\"400\" y=\"" + px(kSize - 20) +
               "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
               escape_text(x_label_) + "</text>\n";
    }
    if (!y_label_.empty()) {
        out += "<text x=\"22\" y=\"400\" font-size=\"14\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" transform=\"rotate(-90 22 400)\">" +
               escape_text(y_label_) + "</text>\n";
    }

    out += body_;

    double ly = kMargin + 14;
    for (const auto& [color, text] : legend_) {
        out += "<rect x=\"" + px(kSize - kMargin - 160) + "\" y=\"" + px(ly - 9) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + px(kSize - kMargin - 145) + "\" y=\"" + px(ly) +
               "\" font-size=\"12\" font-family=\"sans-serif\">" + escape_text(text) +
               "</text>\n";
        ly += 16;
    }

    out += "</svg>\n";
    return out;
}

void SvgPlot::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file: " + path);
    f << render();
}

const char* SvgPlot::palette(std::size_t index) {
    static const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                                   "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2182b"};
    return colors[index % (sizeof(colors) / sizeof(colors[0]))];
}

std::string SvgPlot::diverging_color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    // blue (#2166ac) -> light gray -> red (#b2182b)
    auto lerp = [](double a, double b, double u) { return a + (b - a) * u; };
    double r, g, b;
    if (t < 0) {
        double u = t + 1.0;  // 0..1
        r = lerp(0x21, 0xd9, u);
        g = lerp(0x66, 0xd9, u);
        b = lerp(0xac, 0xd9, u);
    } else {
        r = lerp(0xd9, 0xb2, t);
        g = lerp(0xd9, 0x18, t);
        b = lerp(0xd9, 0x2b, t);
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(r)),
                  static_cast<int>(std::lround(g)), static_cast<int>(std::lround(b)));
    return buf;
}

}  // namespace skewspec
