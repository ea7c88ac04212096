// erp_lab: command-line front end for the equity risk premium library.
//
//   erp_lab implied    --prices P.csv --eps E.csv --yields Y.csv --output erp.csv
//   erp_lab historical --equity S.csv --riskfree T.Bills=tb.csv --window 1928-2008 --method arithmetic --output t.csv
//   erp_lab capm       --asset A.csv --market M.csv
//   erp_lab simulate   --assets 100 --sigma-eps 0.30
//
// Options can also come from a key=value file given by --config or the
// ERP_LAB_CONFIG environment variable; command-line flags take precedence.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erp/erp.hpp"

namespace {

// --NAME plus the column/format/scale flags for one input file. With
// with_path = false only the column flags are added.
void add_series_options(CLI::App& cmd, const std::string& name, erp::SeriesFileSpec& spec, bool with_path = true) {
    if (with_path) cmd.add_option("--" + name, spec.path, "CSV file for the " + name + " series")->required();
    cmd.add_option("--" + name + "-date-column", spec.date_column, "date column header")->capture_default_str();
    cmd.add_option("--" + name + "-value-column", spec.value_column, "value column header")->capture_default_str();
    cmd.add_option("--" + name + "-date-format", spec.date_format, "date pattern (%Y %m %d)")->capture_default_str();
    cmd.add_option("--" + name + "-scale", spec.value_scale, "multiplier applied to every value, e.g. 0.01 for percent")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

const std::map<std::string, erp::SeriesKind> kKinds{{"levels", erp::SeriesKind::levels},
                                                     {"returns", erp::SeriesKind::returns}};
const std::map<std::string, erp::Period> kPeriods{
    {"daily", erp::Period::daily}, {"quarterly", erp::Period::quarterly}, {"annual", erp::Period::annual}};

bool mentions(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::string config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    if (const char* env = std::getenv("ERP_LAB_CONFIG"); env && *env) return env;
    return {};
}

// Inserts `--key=value` for each config entry the chosen subcommand knows
// and the user did not pass explicitly.
std::vector<std::string> merge_config(const CLI::App& app, std::vector<std::string> args) {
    const auto path = config_path(args);
    if (path.empty()) return args;
    const auto sub_it = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return !a.empty() && a[0] != '-' && app.get_subcommand_no_throw(a) != nullptr;
    });
    if (sub_it == args.end()) return args;
    const CLI::App* sub = app.get_subcommand_no_throw(*sub_it);

    std::vector<std::string> injected;
    for (const auto& [key, value] : erp::read_config(path)) {
        const std::string flag = "--" + key;
        if (key == "config" || mentions(args, flag)) continue;
        if (sub->get_option_no_throw(flag) == nullptr) {
            std::cerr << "erp_lab: warning: config key '" << key << "' is not an option of '" << *sub_it << "'\n";
            continue;
        }
        injected.push_back(flag + "=" + value);
    }
    args.insert(std::next(sub_it), injected.begin(), injected.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equity risk premium estimation: implied, historical and CAPM tools", "erp_lab"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_file;
    app.add_option("--config", config_file, "key=value defaults file (also ERP_LAB_CONFIG)");

    erp::ImpliedOptions implied;
    std::string implied_svg;
    auto* implied_cmd = app.add_subcommand("implied", "daily implied ERP from prices, EPS and riskfree yields");
    add_series_options(*implied_cmd, "prices", implied.prices);
    add_series_options(*implied_cmd, "eps", implied.eps);
    add_series_options(*implied_cmd, "yields", implied.yields);
    implied_cmd->add_option("--ema-period", implied.ema_period, "EMA period in observations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    implied_cmd->add_option("--output", implied.output, "output CSV")->required();
    implied_cmd->add_option("--svg", implied_svg, "output SVG chart (default: output with .svg)");

    erp::HistoricalOptions historical;
    std::vector<std::string> riskfree_args, window_args, method_args;
    erp::SeriesFileSpec riskfree_template;
    std::string equity_kind = "returns", riskfree_kind = "returns", hist_period = "annual";
    auto* hist_cmd = app.add_subcommand("historical", "historical ERP report over windows and averaging methods");
    add_series_options(*hist_cmd, "equity", historical.equity);
    hist_cmd->add_option("--equity-kind", equity_kind, "levels or returns")->check(CLI::IsMember({"levels", "returns"}));
    hist_cmd->add_option("--riskfree", riskfree_args, "LABEL=PATH, repeatable")->required()->delimiter(',');
    add_series_options(*hist_cmd, "riskfree", riskfree_template, false);
    hist_cmd->add_option("--riskfree-kind", riskfree_kind, "levels or returns")->check(CLI::IsMember({"levels", "returns"}));
    hist_cmd->add_option("--period", hist_period, "daily, quarterly or annual")
        ->check(CLI::IsMember({"daily", "quarterly", "annual"}));
    hist_cmd->add_option("--window", window_args, "YYYY-YYYY, repeatable")->required()->delimiter(',');
    hist_cmd->add_option("--method", method_args, "arithmetic | geometric | blume:N | exp:DECAY, repeatable")
        ->required()
        ->delimiter(',');
    hist_cmd->add_option("--output", historical.output, "output CSV")->required();

    erp::CapmOptions capm;
    std::string capm_kind = "returns", capm_period = "daily";
    auto* capm_cmd = app.add_subcommand("capm", "market-model regression and risk decomposition");
    add_series_options(*capm_cmd, "asset", capm.asset);
    add_series_options(*capm_cmd, "market", capm.market);
    capm_cmd->add_option("--kind", capm_kind, "levels or returns")->check(CLI::IsMember({"levels", "returns"}));
    capm_cmd->add_option("--period", capm_period, "daily, quarterly or annual")
        ->check(CLI::IsMember({"daily", "quarterly", "annual"}));

    erp::SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "diversification simulation of the market model");
    sim_cmd->add_option("--assets", sim.n_assets, "number of assets")->capture_default_str();
    sim_cmd->add_option("--beta", sim.beta, "common beta")->capture_default_str();
    sim_cmd->add_option("--sigma-m", sim.sigma_m, "market return volatility")->capture_default_str();
    sim_cmd->add_option("--sigma-eps", sim.sigma_eps, "residual volatility per asset")->capture_default_str();
    sim_cmd->add_option("--periods", sim.n_periods, "number of simulated periods")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "generator seed")->capture_default_str();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(app, std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : erp::exit_input_error;
    } catch (const erp::Error& e) {
        std::cerr << "erp_lab: " << e.what() << '\n';
        return erp::exit_input_error;
    }

    try {
        if (implied_cmd->parsed()) {
            if (!implied_svg.empty()) implied.svg_output = implied_svg;
            return erp::run_implied(implied, std::cout, std::cerr);
        }
        if (hist_cmd->parsed()) {
            historical.equity_kind = kKinds.at(equity_kind);
            historical.riskfree_kind = kKinds.at(riskfree_kind);
            historical.period = kPeriods.at(hist_period);
            for (const auto& arg : riskfree_args) {
                const auto eq = arg.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw erp::Error(erp::Errc::invalid_argument, "--riskfree expects LABEL=PATH, got '" + arg + "'");
                auto spec = riskfree_template;
                spec.path = arg.substr(eq + 1);
                historical.riskfree.emplace_back(arg.substr(0, eq), spec);
            }
            for (const auto& w : window_args) historical.windows.push_back(erp::parse_window(w));
            for (const auto& m : method_args) historical.methods.push_back(erp::parse_averaging_method(m));
            return erp::run_historical(historical, std::cout, std::cerr);
        }
        if (capm_cmd->parsed()) {
            capm.kind = kKinds.at(capm_kind);
            capm.period = kPeriods.at(capm_period);
            return erp::run_capm(capm, std::cout, std::cerr);
        }
        if (sim_cmd->parsed()) return erp::run_simulate(sim, std::cout, std::cerr);
    } catch (const erp::Error& e) {
        std::cerr << "erp_lab: " << e.what() << '\n';
        return erp::exit_input_error;
    }
    return erp::exit_input_error;
}
