#pragma once

#include <algorithm>
#include <string>

#include <fmt/format.h>

#include "erp/timeseries.hpp"

namespace erp {

inline constexpr const char* kGeneratorVersion = "erp_lab 0.1.0";

struct ChartOptions {
    std::string title;
    std::string x_label = "date";
    std::string y_label = "value";
    int width = 900;
    int height = 480;
    bool zero_line = true;  // dashed y = 0 when zero is inside the value range
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Single-series line chart, x = date, y = value. Output depends only on the
/// inputs and kGeneratorVersion.
inline std::string render_line_chart(const DatedSeries& series, const ChartOptions& opt = {}) {
    constexpr double left = 80, right = 20, top = 40, bottom = 60;
    const double plot_w = opt.width - left - right;
    const double plot_h = opt.height - top - bottom;

    const auto [min_it, max_it] = std::minmax_element(
        series.begin(), series.end(), [](const Observation& a, const Observation& b) { return a.value < b.value; });
    double y_min = min_it->value, y_max = max_it->value;
    if (y_max == y_min) {
        const double pad = y_min == 0.0 ? 1.0 : std::abs(y_min) * 0.05;
        y_min -= pad;
        y_max += pad;
    }
    const auto x0 = series.front().date.time_since_epoch().count();
    const auto x_span = std::max<decltype(x0)>(1, series.back().date.time_since_epoch().count() - x0);

    auto px = [&](Date d) { return left + plot_w * static_cast<double>(d.time_since_epoch().count() - x0) / x_span; };
    auto py = [&](double v) { return top + plot_h * (1.0 - (v - y_min) / (y_max - y_min)); };

    std::string svg;
    svg += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                       opt.width, opt.height, opt.width, opt.height);
    svg += fmt::format("<!-- generator: {} -->\n", kGeneratorVersion);
    svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", opt.width, opt.height);
    svg += fmt::format("<text class=\"title\" x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
                       left + plot_w / 2, detail::xml_escape(opt.title));

    // axes
    svg += fmt::format("<line class=\"axis x\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                       left, top + plot_h, left + plot_w, top + plot_h);
    svg += fmt::format("<line class=\"axis y\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
                       left, top, left, top + plot_h);
    svg += fmt::format("<text class=\"label x\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
                       left + plot_w / 2, static_cast<double>(opt.height) - 12, detail::xml_escape(opt.x_label));
    svg += fmt::format("<text class=\"label y\" x=\"18\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"13\" "
                       "transform=\"rotate(-90 18 {:.2f})\">{}</text>\n",
                       top + plot_h / 2, top + plot_h / 2, detail::xml_escape(opt.y_label));

    constexpr int y_ticks = 5;
    for (int i = 0; i <= y_ticks; ++i) {
        const double v = y_min + (y_max - y_min) * i / y_ticks;
        svg += fmt::format("<text class=\"tick y\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"10\">{:.4g}</text>\n",
                           left - 6, py(v) + 3, v);
    }
    svg += fmt::format("<text class=\"tick x\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"start\" font-size=\"10\">{}</text>\n",
                       left, top + plot_h + 16, format_date(series.front().date));
    svg += fmt::format("<text class=\"tick x\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"10\">{}</text>\n",
                       left + plot_w, top + plot_h + 16, format_date(series.back().date));

    if (opt.zero_line && y_min < 0.0 && y_max > 0.0)
        svg += fmt::format("<line class=\"zero\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                           "stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n",
                           left, py(0.0), left + plot_w, py(0.0));

    svg += "<polyline class=\"series\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i) svg += ' ';
        svg += fmt::format("{:.2f},{:.2f}", px(series[i].date), py(series[i].value));
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

}  // namespace erp
