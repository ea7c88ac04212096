#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "erp/date.hpp"
#include "erp/error.hpp"

namespace erp {

struct Observation {
    Date date;
    double value;

    friend bool operator==(const Observation&, const Observation&) = default;
};

namespace detail {

inline void check_strictly_increasing(std::span<const Observation> obs) {
    for (std::size_t i = 1; i < obs.size(); ++i) {
        if (obs[i].date == obs[i - 1].date)
            throw Error(Errc::duplicate_date, format_date(obs[i].date));
        if (obs[i].date < obs[i - 1].date)
            throw Error(Errc::unordered_dates,
                        format_date(obs[i].date) + " follows " + format_date(obs[i - 1].date));
    }
}

inline void check_finite(std::span<const Observation> obs) {
    for (const auto& o : obs)
        require(std::isfinite(o.value), Errc::non_finite_value, "at " + format_date(o.date));
}

}  // namespace detail

/// Ordered (date, value) observations. Dates strictly increase, values are
/// finite and the series is never empty. Immutable after construction.
class DatedSeries {
public:
    explicit DatedSeries(std::vector<Observation> observations) : obs_(std::move(observations)) {
        require(!obs_.empty(), Errc::empty_series, "a dated series needs at least one observation");
        detail::check_strictly_increasing(obs_);
        detail::check_finite(obs_);
    }

    DatedSeries(std::span<const Date> dates, std::span<const double> values)
        : DatedSeries(zip(dates, values)) {}

    std::span<const Observation> observations() const noexcept { return obs_; }
    std::size_t size() const noexcept { return obs_.size(); }
    const Observation& operator[](std::size_t i) const { return obs_[i]; }
    const Observation& front() const { return obs_.front(); }
    const Observation& back() const { return obs_.back(); }
    auto begin() const noexcept { return obs_.begin(); }
    auto end() const noexcept { return obs_.end(); }

    std::vector<Date> dates() const {
        std::vector<Date> out;
        out.reserve(obs_.size());
        for (const auto& o : obs_) out.push_back(o.date);
        return out;
    }

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(obs_.size());
        for (const auto& o : obs_) out.push_back(o.value);
        return out;
    }

    friend bool operator==(const DatedSeries&, const DatedSeries&) = default;

private:
    static std::vector<Observation> zip(std::span<const Date> dates, std::span<const double> values) {
        require(dates.size() == values.size(), Errc::length_mismatch,
                "dates and values differ in length");
        std::vector<Observation> out;
        out.reserve(dates.size());
        for (std::size_t i = 0; i < dates.size(); ++i) out.push_back({dates[i], values[i]});
        return out;
    }

    std::vector<Observation> obs_;
};

enum class Period { daily, quarterly, annual };

constexpr std::string_view to_string(Period p) noexcept {
    switch (p) {
    case Period::daily: return "daily";
    case Period::quarterly: return "quarterly";
    case Period::annual: return "annual";
    }
    return "daily";
}

/// Per-period simple returns, each dated at the period end. Every return
/// is strictly greater than -1.
class ReturnSeries {
public:
    ReturnSeries(std::vector<Observation> returns, Period period)
        : obs_(std::move(returns)), period_(period) {
        require(!obs_.empty(), Errc::empty_series, "a return series needs at least one observation");
        detail::check_strictly_increasing(obs_);
        detail::check_finite(obs_);
        for (const auto& o : obs_)
            require(o.value > -1.0, Errc::return_below_minus_one,
                    "return " + std::to_string(o.value) + " at " + format_date(o.date));
    }

    ReturnSeries(const DatedSeries& returns, Period period)
        : ReturnSeries(std::vector<Observation>(returns.begin(), returns.end()), period) {}

    Period period() const noexcept { return period_; }
    std::span<const Observation> observations() const noexcept { return obs_; }
    std::size_t size() const noexcept { return obs_.size(); }
    const Observation& operator[](std::size_t i) const { return obs_[i]; }
    auto begin() const noexcept { return obs_.begin(); }
    auto end() const noexcept { return obs_.end(); }

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(obs_.size());
        for (const auto& o : obs_) out.push_back(o.value);
        return out;
    }

    friend bool operator==(const ReturnSeries&, const ReturnSeries&) = default;

private:
    std::vector<Observation> obs_;
    Period period_;
};

template <class S>
concept ObservationSeries = requires(const S& s) {
    { s.observations() } -> std::convertible_to<std::span<const Observation>>;
};

struct AlignedPair {
    Date date;
    double a;
    double b;

    friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

/// Observations of `a` and `b` on the dates present in both, in date order.
template <ObservationSeries A, ObservationSeries B>
std::vector<AlignedPair> align(const A& a, const B& b) {
    const std::span<const Observation> xs = a.observations();
    const std::span<const Observation> ys = b.observations();
    std::vector<AlignedPair> out;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        if (xs[i].date < ys[j].date) {
            ++i;
        } else if (ys[j].date < xs[i].date) {
            ++j;
        } else {
            out.push_back({xs[i].date, xs[i].value, ys[j].value});
            ++i;
            ++j;
        }
    }
    require(!out.empty(), Errc::empty_intersection, "the two series share no dates");
    return out;
}

inline ReturnSeries simple_returns(const DatedSeries& prices, Period period = Period::daily) {
    require(prices.size() >= 2, Errc::too_short, "need at least two prices to form a return");
    for (const auto& p : prices)
        require(p.value > 0.0, Errc::non_positive_price, "at " + format_date(p.date));
    std::vector<Observation> out;
    out.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i)
        out.push_back({prices[i].date, prices[i].value / prices[i - 1].value - 1.0});
    return ReturnSeries(std::move(out), period);
}

/// Exponential moving average over observations, alpha = 2 / (period + 1),
/// seeded with the first value.
inline DatedSeries ema(const DatedSeries& series, int period) {
    require(period >= 1, Errc::invalid_argument, "EMA period must be >= 1");
    const double alpha = 2.0 / (static_cast<double>(period) + 1.0);
    std::vector<Observation> out;
    out.reserve(series.size());
    double state = series.front().value;
    for (const auto& o : series) {
        // equal input leaves the state alone, so constant series come back exactly
        if (o.value != state) state = alpha * o.value + (1.0 - alpha) * state;
        out.push_back({o.date, state});
    }
    return DatedSeries(std::move(out));
}

/// Last observation carried forward onto `calendar`.
inline DatedSeries step_interpolate(const DatedSeries& sparse, std::span<const Date> calendar) {
    require(!calendar.empty(), Errc::invalid_argument, "calendar is empty");
    require(calendar.front() >= sparse.front().date, Errc::calendar_precedes_data,
            format_date(calendar.front()) + " precedes first observation " +
                format_date(sparse.front().date));
    std::vector<Observation> out;
    out.reserve(calendar.size());
    std::size_t k = 0;
    for (const Date d : calendar) {
        while (k + 1 < sparse.size() && sparse[k + 1].date <= d) ++k;
        out.push_back({d, sparse[k].value});
    }
    return DatedSeries(std::move(out));
}

/// Observations with dates in [first, last].
template <ObservationSeries S>
std::vector<Observation> restrict_to(const S& series, Date first, Date last) {
    std::vector<Observation> out;
    for (const auto& o : series.observations())
        if (o.date >= first && o.date <= last) out.push_back(o);
    return out;
}

}  // namespace erp
