#include "summatoria/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace summatoria::svg {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 30, kTop = 40, kBottom = 50;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string render(const PlotSpec& plot) {
    if (plot.xs.empty() || plot.xs.size() != plot.ys.size())
        throw ConfigError("svg: empty or mismatched plot data");
    for (double x : plot.xs)
        if (!(x > 0.0)) throw ConfigError("svg: log axis requires x > 0");

    double x_lo = std::log10(plot.xs.front());
    double x_hi = std::log10(plot.xs.back());
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    double y_lo = plot.ys.front(), y_hi = plot.ys.front();
    for (double y : plot.ys) {
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    }
    if (plot.reference) {
        y_lo = std::min(y_lo, *plot.reference);
        y_hi = std::max(y_hi, *plot.reference);
    }
    double pad = (y_hi - y_lo) * 0.08;
    if (pad == 0.0) pad = std::max(1e-12, std::abs(y_hi) * 0.1 + 1e-12);
    y_lo -= pad;
    y_hi += pad;

    auto sx = [&](double x) {
        return kLeft + (std::log10(x) - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight);
    };
    auto sy = [&](double y) {
        return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    out += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"15\">" + plot.title + "</text>\n";

    // axes
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" +
           num(kWidth - kRight) + "\" y2=\"" + num(kHeight - kBottom) +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(kHeight - kBottom) + "\" stroke=\"black\"/>\n";

    // decade ticks on the log x axis
    for (int e = static_cast<int>(std::ceil(x_lo)); e <= static_cast<int>(std::floor(x_hi));
         ++e) {
        double x = sx(std::pow(10.0, e));
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" +
               num(x) + "\" y2=\"" + num(kHeight - kBottom + 6) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(kHeight - kBottom + 22) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">1e" +
               std::to_string(e) + "</text>\n";
    }

    // y ticks
    for (int i = 0; i <= 5; ++i) {
        double y = y_lo + (y_hi - y_lo) * i / 5.0;
        double yy = sy(y);
        out += "<line x1=\"" + num(kLeft - 6) + "\" y1=\"" + num(yy) + "\" x2=\"" +
               num(kLeft) + "\" y2=\"" + num(yy) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(kLeft - 10) + "\" y=\"" + num(yy + 4) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">" +
               label(y) + "</text>\n";
    }
    if (!plot.y_label.empty())
        out += "<text x=\"14\" y=\"" + num(kTop - 10) +
               "\" font-family=\"monospace\" font-size=\"12\">" + plot.y_label + "</text>\n";

    if (plot.reference) {
        double yy = sy(*plot.reference);
        out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(yy) + "\" x2=\"" +
               num(kWidth - kRight) + "\" y2=\"" + num(yy) +
               "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    }

    out += "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < plot.xs.size(); ++i) {
        if (i) out += ' ';
        out += num(sx(plot.xs[i])) + "," + num(sy(plot.ys[i]));
    }
    out += "\"/>\n";
    for (std::size_t i = 0; i < plot.xs.size(); ++i)
        out += "<circle cx=\"" + num(sx(plot.xs[i])) + "\" cy=\"" + num(sy(plot.ys[i])) +
               "\" r=\"2.5\" fill=\"#1f5fbf\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace summatoria::svg
