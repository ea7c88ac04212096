#pragma once

#include <charconv>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "erp/averaging.hpp"
#include "erp/timeseries.hpp"

namespace erp {

/// Inclusive calendar-year range, e.g. 1928-2008.
struct YearWindow {
    int first_year = 0;
    int last_year = 0;

    bool contains(Date d) const {
        const int y = year_of(d);
        return y >= first_year && y <= last_year;
    }

    std::string label() const { return std::to_string(first_year) + "-" + std::to_string(last_year); }

    friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

inline YearWindow make_window(int first_year, int last_year) {
    require(first_year <= last_year, Errc::invalid_argument,
            "window start " + std::to_string(first_year) + " is after its end " +
                std::to_string(last_year));
    return {first_year, last_year};
}

/// Parses "YYYY-YYYY".
inline YearWindow parse_window(std::string_view text) {
    const auto dash = text.find('-', 1);
    int first = 0, last = 0;
    bool ok = dash != std::string_view::npos;
    if (ok) {
        const auto a = std::from_chars(text.data(), text.data() + dash, first);
        const auto b = std::from_chars(text.data() + dash + 1, text.data() + text.size(), last);
        ok = a.ec == std::errc{} && a.ptr == text.data() + dash && b.ec == std::errc{} &&
             b.ptr == text.data() + text.size();
    }
    require(ok, Errc::invalid_argument, "window must look like 1928-2008, got '" + std::string(text) + "'");
    return make_window(first, last);
}

struct ErpEstimate {
    double premium = 0.0;
    YearWindow window;
    std::string riskfree_label;
    AveragingMethod method;
    std::size_t sample_size = 0;
    double equity_average = 0.0;
    double riskfree_average = 0.0;
};

/// Equity return minus riskfree return on each common date. Premia are not
/// bounded below by -1, so the result is a plain DatedSeries.
inline DatedSeries premium_series(const ReturnSeries& equity, const ReturnSeries& riskfree) {
    const auto pairs = align(equity, riskfree);
    std::vector<Observation> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back({p.date, p.a - p.b});
    return DatedSeries(std::move(out));
}

/// Averages each leg over the aligned in-window sample with `method`, then
/// takes the difference.
inline ErpEstimate historical_erp(const ReturnSeries& equity, const ReturnSeries& riskfree,
                                  const YearWindow& window, const AveragingMethod& method,
                                  std::string riskfree_label = {}) {
    std::vector<double> eq, rf;
    for (const auto& p : align(equity, riskfree)) {
        if (!window.contains(p.date)) continue;
        eq.push_back(p.a);
        rf.push_back(p.b);
    }
    require(!eq.empty(), Errc::empty_window, "no aligned observations in " + window.label());

    ErpEstimate est;
    est.equity_average = average(eq, method);
    est.riskfree_average = average(rf, method);
    est.premium = est.equity_average - est.riskfree_average;
    est.window = window;
    est.riskfree_label = std::move(riskfree_label);
    est.method = method;
    est.sample_size = eq.size();
    return est;
}

struct RiskfreeVariant {
    std::string label;
    ReturnSeries returns;
};

struct ReportColumn {
    std::string riskfree_label;
    AveragingMethod method;

    std::string label() const { return riskfree_label + " " + to_string(method); }
};

/// One table cell: an estimate, or the reason it could not be produced.
struct ReportCell {
    std::optional<ErpEstimate> estimate;
    std::string missing_reason;

    bool missing() const { return !estimate.has_value(); }
};

/// Rows are windows; columns are riskfree variants crossed with methods,
/// variant-major.
struct ErpReport {
    std::vector<YearWindow> windows;
    std::vector<ReportColumn> columns;
    std::vector<std::vector<ReportCell>> cells;

    const ReportCell& at(std::size_t row, std::size_t column) const { return cells.at(row).at(column); }

    std::size_t missing_count() const {
        std::size_t n = 0;
        for (const auto& row : cells)
            for (const auto& c : row) n += c.missing() ? 1 : 0;
        return n;
    }
};

inline ErpReport erp_report(const ReturnSeries& equity, const std::vector<RiskfreeVariant>& variants,
                            const std::vector<YearWindow>& windows,
                            const std::vector<AveragingMethod>& methods) {
    require(!variants.empty(), Errc::invalid_argument, "report needs at least one riskfree variant");
    require(!windows.empty(), Errc::invalid_argument, "report needs at least one window");
    require(!methods.empty(), Errc::invalid_argument, "report needs at least one averaging method");

    ErpReport report;
    report.windows = windows;
    for (const auto& v : variants)
        for (const auto& m : methods) report.columns.push_back({v.label, m});

    for (const auto& w : windows) {
        auto& row = report.cells.emplace_back();
        for (const auto& v : variants) {
            for (const auto& m : methods) {
                ReportCell cell;
                try {
                    cell.estimate = historical_erp(equity, v.returns, w, m, v.label);
                } catch (const Error& e) {
                    if (e.code() != Errc::empty_window && e.code() != Errc::empty_intersection &&
                        e.code() != Errc::horizon_exceeds_sample)
                        throw;
                    cell.missing_reason = e.what();
                }
                row.push_back(std::move(cell));
            }
        }
    }
    return report;
}

/// Fixed-point rendering with ten digits after the decimal point.
inline std::string format_decimal(double v) {
    if (v == 0.0) v = 0.0;  // no "-0.0000000000"
    return fmt::format("{:.10f}", v);
}

/// Table-1 layout: `window,<variant> <method>,...`, premiums as decimal
/// fractions, missing cells written as `NA`.
inline void write_report_csv(std::ostream& os, const ErpReport& report) {
    os << "window";
    for (const auto& c : report.columns) os << ',' << c.label();
    os << '\n';
    for (std::size_t r = 0; r < report.windows.size(); ++r) {
        os << report.windows[r].label();
        for (const auto& cell : report.cells[r])
            os << ',' << (cell.missing() ? std::string("NA") : format_decimal(cell.estimate->premium));
        os << '\n';
    }
}

}  // namespace erp
