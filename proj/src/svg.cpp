#include "vfp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vfp/errors.hpp"

namespace vfp {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                           "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

std::string coord(double v) { return fmt("%.2f", v); }

// largest "nice" step (1, 2, 5) * 10^m not exceeding the raw spacing
double nice_step(double range, int max_ticks) {
    const double raw = range / std::max(1, max_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {5.0, 2.0, 1.0})
        if (m * mag <= raw * (1.0 + 1e-12)) return m * mag;
    return mag;
}

std::string tick_label(double v) {
    if (v == 0.0) return "0";
    const double a = std::abs(v);
    if (a >= 1e4 || a < 1e-3) return fmt("%.1e", v);
    std::string s = fmt("%.6g", v);
    return s;
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const PlotOptions& options) {
    // collect drawable points (finite, and positive when the y axis is log)
    struct Pt {
        double x, y;
    };
    std::vector<std::vector<Pt>> data;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw ValidationError("svg: series '" + s.name + "' has mismatched x/y sizes");
        std::vector<Pt> pts;
        for (size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i], y = s.y[i];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (options.log_y) {
                if (y <= 0.0) continue;
                y = std::log10(y);
            }
            pts.push_back({x, y});
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        data.push_back(std::move(pts));
    }
    size_t total = 0;
    for (const auto& pts : data) total += pts.size();
    if (total == 0) throw ValidationError("svg: nothing to draw");
    if (xmin == xmax) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymin == ymax) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
           "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
           coord(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"13\">\n";

    // frame
    svg += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" +
           coord(plot_w) + "\" height=\"" + coord(plot_h) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";

    // x ticks
    {
        const double step = nice_step(xmax - xmin, 8);
        for (double t = std::ceil(xmin / step) * step; t <= xmax + 1e-12 * step; t += step) {
            const double X = px(t);
            svg += "<line x1=\"" + coord(X) + "\" y1=\"" + coord(kTop + plot_h) + "\" x2=\"" +
                   coord(X) + "\" y2=\"" + coord(kTop + plot_h + 5) +
                   "\" stroke=\"#333\"/>\n";
            svg += "<text x=\"" + coord(X) + "\" y=\"" + coord(kTop + plot_h + 20) +
                   "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
        }
    }
    // y ticks (decades when log)
    {
        const double step =
            options.log_y ? std::max(1.0, std::floor((ymax - ymin) / 8.0)) : nice_step(ymax - ymin, 8);
        for (double t = std::ceil(ymin / step) * step; t <= ymax + 1e-12 * step; t += step) {
            const double Y = py(t);
            svg += "<line x1=\"" + coord(kLeft - 5) + "\" y1=\"" + coord(Y) + "\" x2=\"" +
                   coord(kLeft) + "\" y2=\"" + coord(Y) + "\" stroke=\"#333\"/>\n";
            const std::string label =
                options.log_y ? ("1e" + tick_label(t)) : tick_label(t);
            svg += "<text x=\"" + coord(kLeft - 9) + "\" y=\"" + coord(Y + 4) +
                   "\" text-anchor=\"end\">" + label + "</text>\n";
            svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(Y) + "\" x2=\"" +
                   coord(kLeft + plot_w) + "\" y2=\"" + coord(Y) +
                   "\" stroke=\"#ddd\" stroke-dasharray=\"3,3\"/>\n";
        }
    }

    // series
    for (size_t s = 0; s < data.size(); ++s) {
        if (data[s].empty()) continue;
        const char* color = kPalette[s % 6];
        std::string points;
        for (const auto& p : data[s]) {
            if (!points.empty()) points += ' ';
            points += coord(px(p.x)) + "," + coord(py(p.y));
        }
        if (data[s].size() == 1) {
            svg += "<circle cx=\"" + coord(px(data[s][0].x)) + "\" cy=\"" +
                   coord(py(data[s][0].y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        } else {
            svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"1.5\"/>\n";
        }
    }

    // legend
    for (size_t s = 0; s < series.size(); ++s) {
        const double Y = kTop + 16 + 18.0 * s;
        svg += "<line x1=\"" + coord(kLeft + plot_w - 150) + "\" y1=\"" + coord(Y - 4) +
               "\" x2=\"" + coord(kLeft + plot_w - 125) + "\" y2=\"" + coord(Y - 4) +
               "\" stroke=\"" + kPalette[s % 6] + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + coord(kLeft + plot_w - 118) + "\" y=\"" + coord(Y) + "\">" +
               escape_text(series[s].name) + "</text>\n";
    }

    // labels
    if (!options.title.empty())
        svg += "<text x=\"" + coord(kLeft + plot_w / 2) + "\" y=\"" + coord(kTop - 16) +
               "\" text-anchor=\"middle\" font-size=\"16\">" + escape_text(options.title) +
               "</text>\n";
    if (!options.x_label.empty())
        svg += "<text x=\"" + coord(kLeft + plot_w / 2) + "\" y=\"" +
               coord(kHeight - 14) + "\" text-anchor=\"middle\">" +
               escape_text(options.x_label) + "</text>\n";
    if (!options.y_label.empty())
        svg += "<text x=\"18\" y=\"" + coord(kTop + plot_h / 2) +
               "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
               coord(kTop + plot_h / 2) + ")\">" +
               escape_text(options.log_y ? options.y_label + " (log)" : options.y_label) +
               "</text>\n";

    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace vfp
