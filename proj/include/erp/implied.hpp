#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "erp/timeseries.hpp"

namespace erp {

struct Cashflow {
    int period = 1;  // i >= 1
    double amount = 0.0;
};

/// Expected cash flows CF_i at period ends i; indices strictly increase from 1.
class CashflowSchedule {
public:
    explicit CashflowSchedule(std::vector<Cashflow> flows) : flows_(std::move(flows)) {
        for (std::size_t i = 0; i < flows_.size(); ++i) {
            require(flows_[i].period >= 1, Errc::invalid_argument, "cash flow periods start at 1");
            require(i == 0 || flows_[i].period > flows_[i - 1].period, Errc::invalid_argument,
                    "cash flow periods must strictly increase");
            require(std::isfinite(flows_[i].amount), Errc::non_finite_value, "cash flow amount");
        }
    }

    /// Amounts for periods 1..n.
    static CashflowSchedule consecutive(const std::vector<double>& amounts) {
        std::vector<Cashflow> flows;
        for (std::size_t i = 0; i < amounts.size(); ++i) flows.push_back({static_cast<int>(i) + 1, amounts[i]});
        return CashflowSchedule(std::move(flows));
    }

    const std::vector<Cashflow>& flows() const noexcept { return flows_; }

private:
    std::vector<Cashflow> flows_;
};

/// Present value sum CF_i / (1 + rate)^i.
inline double dcf_price(const CashflowSchedule& schedule, double rate) {
    require(rate > -1.0, Errc::rate_below_minus_one, "discount rate must exceed -1");
    double pv = 0.0;
    for (const auto& cf : schedule.flows()) pv += cf.amount / std::pow(1.0 + rate, cf.period);
    return pv;
}

struct GordonInputs {
    double dividend_now = 0.0;  // D, paid today
    double growth = 0.0;        // g
    double required_k = 0.0;    // k
};

/// Constant-growth perpetuity D(1+g)/(k-g).
inline double gordon_price(const GordonInputs& in) {
    require(in.dividend_now > 0.0, Errc::invalid_inputs, "dividend must be positive");
    require(in.required_k > in.growth, Errc::non_convergent,
            "required return must exceed growth for the dividend sum to converge");
    return in.dividend_now * (1.0 + in.growth) / (in.required_k - in.growth);
}

/// Dividend yield on next period's dividend plus growth: D(1+g)/P + g.
inline double gordon_implied_k(double price, double dividend_now, double growth) {
    require(price > 0.0, Errc::non_positive_price, "price must be positive");
    require(dividend_now > 0.0, Errc::invalid_inputs, "dividend must be positive");
    return dividend_now * (1.0 + growth) / price + growth;
}

/// Earnings-model price EPS*p / (k - k(1-p)); algebraically EPS/k for any payout p.
inline double earnings_price(double eps, double payout_ratio, double required_k) {
    require(eps > 0.0, Errc::non_positive_eps, "EPS must be positive");
    require(payout_ratio > 0.0 && payout_ratio <= 1.0, Errc::invalid_inputs, "payout ratio must lie in (0, 1]");
    require(required_k > 0.0, Errc::invalid_inputs, "required return must be positive");
    return eps * payout_ratio / (required_k - required_k * (1.0 - payout_ratio));
}

/// Earnings yield EPS/P.
inline double earnings_implied_k(double price, double eps) {
    require(price > 0.0, Errc::non_positive_price, "price must be positive");
    require(eps > 0.0, Errc::non_positive_eps, "EPS must be positive");
    return eps / price;
}

/// Abrupt two-stage dividend model: growth g_s for n_s years, g_l forever after.
struct TwoStageInputs {
    double dividend_now = 0.0;
    double short_growth = 0.0;
    int short_years = 0;
    double long_growth = 0.0;
};

inline void validate(const TwoStageInputs& in) {
    require(std::isfinite(in.dividend_now) && in.dividend_now > 0.0, Errc::invalid_inputs,
            "dividend must be positive");
    require(in.short_years >= 0, Errc::invalid_inputs, "short stage length must be >= 0");
    require(std::isfinite(in.short_growth) && in.short_growth > -1.0, Errc::invalid_inputs,
            "short-stage growth must exceed -1");
    require(std::isfinite(in.long_growth) && in.long_growth > -1.0, Errc::invalid_inputs,
            "long-run growth must exceed -1");
}

/// sum_{t=1..n_s} D(1+g_s)^t/(1+k)^t + [D(1+g_s)^n_s (1+g_l)/(k-g_l)] / (1+k)^n_s
inline double two_stage_price(const TwoStageInputs& in, double k) {
    validate(in);
    require(k > in.long_growth, Errc::non_convergent, "required return must exceed long-run growth");
    const double ratio = (1.0 + in.short_growth) / (1.0 + k);
    double pv = 0.0;
    double term = in.dividend_now;
    for (int t = 1; t <= in.short_years; ++t) {
        term *= ratio;
        pv += term;
    }
    const double last_dividend = in.dividend_now * std::pow(1.0 + in.short_growth, in.short_years);
    const double terminal = last_dividend * (1.0 + in.long_growth) / (k - in.long_growth);
    return pv + terminal / std::pow(1.0 + k, in.short_years);
}

struct BisectionSettings {
    double lower_offset = 1e-9;  // lower bracket is long_growth + lower_offset
    double upper = 10.0;
    double tolerance = 1e-10;    // absolute, on k
    int max_iterations = 200;
};

/// Required return k at which the two-stage model reproduces `price`. The
/// model price falls strictly as k rises, so a bracketed root is unique.
inline double two_stage_implied_k(double price, const TwoStageInputs& in, const BisectionSettings& settings = {}) {
    require(std::isfinite(price) && price > 0.0, Errc::non_positive_price, "price must be positive");
    validate(in);

    double lo = in.long_growth + settings.lower_offset;
    double hi = settings.upper;
    require(lo < hi, Errc::no_root_in_bracket, "long-run growth leaves no admissible bracket");

    const double price_lo = two_stage_price(in, lo);
    const double price_hi = two_stage_price(in, hi);
    require(price <= price_lo, Errc::no_root_in_bracket,
            "price exceeds the model price at the lowest admissible k");
    require(price >= price_hi, Errc::no_root_in_bracket,
            "price is below the model price at k = " + std::to_string(hi));

    for (int it = 0; it < settings.max_iterations && hi - lo > settings.tolerance; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (two_stage_price(in, mid) > price)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct ImpliedErpRow {
    Date date;
    double price = 0.0;
    double eps = 0.0;
    double riskfree_yield = 0.0;
    double erp = 0.0;
};

/// Earnings yield minus riskfree yield on each date common to all three series.
inline std::vector<ImpliedErpRow> implied_erp_table(const DatedSeries& prices, const DatedSeries& eps_daily,
                                                    const DatedSeries& yields) {
    std::vector<Observation> price_eps;
    std::vector<double> eps_values;
    for (const auto& p : align(prices, eps_daily)) {
        price_eps.push_back({p.date, p.a});
        eps_values.push_back(p.b);
    }

    std::vector<ImpliedErpRow> rows;
    const DatedSeries common(price_eps);
    std::size_t k = 0;
    for (const auto& p : align(common, yields)) {
        while (price_eps[k].date < p.date) ++k;
        const double eps = eps_values[k];
        require(p.a > 0.0, Errc::non_positive_price, "at " + format_date(p.date));
        require(eps > 0.0, Errc::non_positive_eps, "at " + format_date(p.date));
        rows.push_back({p.date, p.a, eps, p.b, earnings_implied_k(p.a, eps) - p.b});
    }
    return rows;
}

inline DatedSeries implied_erp_series(const DatedSeries& prices, const DatedSeries& eps_daily,
                                      const DatedSeries& yields) {
    std::vector<Observation> out;
    for (const auto& row : implied_erp_table(prices, eps_daily, yields)) out.push_back({row.date, row.erp});
    return DatedSeries(std::move(out));
}

}  // namespace erp
