#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "erp/capm.hpp"
#include "erp/historical.hpp"
#include "erp/implied.hpp"
#include "erp/ingest.hpp"
#include "erp/svg.hpp"

namespace erp {

enum ExitStatus : int { exit_ok = 0, exit_input_error = 1, exit_numerical_failure = 2 };

/// Whether a file holds price levels (converted to simple returns) or returns.
enum class SeriesKind { levels, returns };

struct ImpliedOptions {
    SeriesFileSpec prices;
    SeriesFileSpec eps;
    SeriesFileSpec yields;
    int ema_period = 50;
    std::filesystem::path output;
    std::optional<std::filesystem::path> svg_output;  // defaults to output with .svg extension
};

struct HistoricalOptions {
    SeriesFileSpec equity;
    SeriesKind equity_kind = SeriesKind::returns;
    std::vector<std::pair<std::string, SeriesFileSpec>> riskfree;  // (label, file)
    SeriesKind riskfree_kind = SeriesKind::returns;
    Period period = Period::annual;
    std::vector<YearWindow> windows;
    std::vector<AveragingMethod> methods;
    std::filesystem::path output;
};

struct CapmOptions {
    SeriesFileSpec asset;
    SeriesFileSpec market;
    SeriesKind kind = SeriesKind::returns;
    Period period = Period::daily;
};

struct SimulateOptions {
    int n_assets = 100;
    double beta = 1.0;
    double sigma_m = 0.15;
    double sigma_eps = 0.30;
    int n_periods = 10000;
    std::uint64_t seed = 42;
};

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

/// Runs `body`, reporting failures as "<command>: <stage>: <message>".
template <class Body>
int run_stages(const char* command, std::ostream& err, Body&& body) {
    std::string stage = "setup";
    try {
        return body(stage);
    } catch (const Error& e) {
        err << command << ": " << stage << ": " << e.what() << '\n';
        return is_numerical_failure(e.code()) ? exit_numerical_failure : exit_input_error;
    } catch (const std::exception& e) {
        err << command << ": " << stage << ": " << e.what() << '\n';
        return exit_input_error;
    }
}

inline ReturnSeries load_returns(const SeriesFileSpec& spec, SeriesKind kind, Period period) {
    const auto series = parse_series(spec);
    return kind == SeriesKind::levels ? simple_returns(series, period) : ReturnSeries(series, period);
}

}  // namespace detail

/// CSV columns: date,price,eps_smoothed,yield,erp.
inline std::string implied_csv(const std::vector<ImpliedErpRow>& rows) {
    std::string csv = "date,price,eps_smoothed,yield,erp\n";
    for (const auto& r : rows) {
        csv += format_date(r.date);
        for (const double v : {r.price, r.eps, r.riskfree_yield, r.erp}) {
            csv += ',';
            csv += format_decimal(v);
        }
        csv += '\n';
    }
    return csv;
}

/// parse -> carry EPS onto the price calendar -> EMA -> earnings yield minus
/// riskfree yield -> CSV + SVG.
inline int run_implied(const ImpliedOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::run_stages("implied", err, [&](std::string& stage) {
        stage = "parse prices";
        const auto prices = parse_series(opt.prices);
        stage = "parse eps";
        const auto eps = parse_series(opt.eps);
        stage = "parse yields";
        const auto yields = parse_series(opt.yields);

        stage = "interpolate eps";
        std::vector<Date> calendar;
        for (const auto& o : prices)
            if (o.date >= eps.front().date) calendar.push_back(o.date);
        require(!calendar.empty(), Errc::calendar_precedes_data,
                "every price date precedes the first EPS observation " + format_date(eps.front().date));
        if (calendar.size() < prices.size())
            err << "implied: warning: dropped " << prices.size() - calendar.size()
                << " price dates before the first EPS observation\n";
        const auto eps_daily = step_interpolate(eps, calendar);

        stage = "smooth eps";
        const auto eps_smoothed = ema(eps_daily, opt.ema_period);

        stage = "implied erp";
        const auto rows = implied_erp_table(prices, eps_smoothed, yields);

        stage = "write output";
        std::vector<Observation> erp;
        for (const auto& r : rows) erp.push_back({r.date, r.erp});
        ChartOptions chart;
        chart.title = "Implied equity risk premium (EMA " + std::to_string(opt.ema_period) + ")";
        chart.y_label = "ERP (decimal)";
        const std::string svg = render_line_chart(DatedSeries(std::move(erp)), chart);
        const auto svg_path = opt.svg_output.value_or(std::filesystem::path(opt.output).replace_extension(".svg"));
        detail::write_text_file(opt.output, implied_csv(rows));
        detail::write_text_file(svg_path, svg);
        out << "wrote " << rows.size() << " rows to " << opt.output.string() << " and chart to "
            << svg_path.string() << '\n';
        return int{exit_ok};
    });
}

inline int run_historical(const HistoricalOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::run_stages("historical", err, [&](std::string& stage) {
        stage = "parse equity";
        const auto equity = detail::load_returns(opt.equity, opt.equity_kind, opt.period);
        std::vector<RiskfreeVariant> variants;
        for (const auto& [label, spec] : opt.riskfree) {
            stage = "parse riskfree " + label;
            variants.push_back({label, detail::load_returns(spec, opt.riskfree_kind, opt.period)});
        }

        stage = "report";
        const auto report = erp_report(equity, variants, opt.windows, opt.methods);
        for (std::size_t r = 0; r < report.windows.size(); ++r)
            for (std::size_t c = 0; c < report.columns.size(); ++c)
                if (report.at(r, c).missing())
                    err << "historical: warning: " << report.windows[r].label() << " / "
                        << report.columns[c].label() << " flagged: " << report.at(r, c).missing_reason << '\n';

        stage = "write output";
        std::ostringstream csv;
        write_report_csv(csv, report);
        detail::write_text_file(opt.output, csv.str());
        out << "wrote " << report.windows.size() << "x" << report.columns.size() << " report to "
            << opt.output.string() << '\n';
        return int{exit_ok};
    });
}

inline int run_capm(const CapmOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::run_stages("capm", err, [&](std::string& stage) {
        stage = "parse asset";
        const auto asset = detail::load_returns(opt.asset, opt.kind, opt.period);
        stage = "parse market";
        const auto market = detail::load_returns(opt.market, opt.kind, opt.period);

        stage = "fit";
        const auto fit = fit_market_model(asset, market);
        std::vector<double> aligned_market;
        for (const auto& p : align(asset, market)) aligned_market.push_back(p.b);
        const double sigma_m = detail::population_sigma(aligned_market);
        const auto risk = risk_decomposition(fit, sigma_m);

        out << "n_obs=" << fit.n_obs << '\n'
            << "beta=" << format_decimal(fit.beta) << '\n'
            << "intercept=" << format_decimal(fit.intercept) << '\n'
            << "residual_sigma=" << format_decimal(fit.residual_sigma) << '\n'
            << "beta_std_error=" << (std::isnan(fit.beta_std_error) ? std::string("NA") : format_decimal(fit.beta_std_error))
            << '\n'
            << "sigma_m=" << format_decimal(sigma_m) << '\n'
            << "systematic=" << format_decimal(risk.systematic) << '\n'
            << "unsystematic=" << format_decimal(risk.unsystematic) << '\n';
        return int{exit_ok};
    });
}

inline int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::run_stages("simulate", err, [&](std::string& stage) {
        stage = "simulate";
        const auto r = simulate_diversification(opt.n_assets, opt.beta, opt.sigma_m, opt.sigma_eps, opt.n_periods, opt.seed);
        out << "n_assets=" << opt.n_assets << '\n'
            << "portfolio_systematic=" << format_decimal(r.portfolio_systematic) << '\n'
            << "portfolio_unsystematic=" << format_decimal(r.portfolio_unsystematic) << '\n';
        return int{exit_ok};
    });
}

/// Plain-text `key = value` configuration. Blank lines and lines starting
/// with '#' or ';' are ignored.
inline std::map<std::string, std::string> parse_config(std::string_view text, const std::string& source = "<config>") {
    std::map<std::string, std::string> config;
    std::size_t start = 0, number = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto raw = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        ++number;
        const auto line = csv::trim(raw);
        if (!line.empty() && line.front() != '#' && line.front() != ';') {
            const auto eq = line.find('=');
            require(eq != std::string_view::npos && eq > 0, Errc::invalid_argument,
                    source + " line " + std::to_string(number) + ": expected key=value");
            config[std::string(csv::trim(line.substr(0, eq)))] = std::string(csv::trim(line.substr(eq + 1)));
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return config;
}

inline std::map<std::string, std::string> read_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::file_not_found, "config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

}  // namespace erp
