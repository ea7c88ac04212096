#pragma once

#include <charconv>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "erp/error.hpp"

namespace erp {

struct Arithmetic {
    friend bool operator==(const Arithmetic&, const Arithmetic&) = default;
};

struct Geometric {
    friend bool operator==(const Geometric&, const Geometric&) = default;
};

/// Horizon-weighted blend of the arithmetic and geometric means.
struct Blume {
    int horizon = 1;
    friend bool operator==(const Blume&, const Blume&) = default;
};

/// Weights proportional to decay^(age), age 0 being the latest observation.
struct ExpWeighted {
    double decay = 1.0;
    friend bool operator==(const ExpWeighted&, const ExpWeighted&) = default;
};

using AveragingMethod = std::variant<Arithmetic, Geometric, Blume, ExpWeighted>;

inline AveragingMethod blume(int horizon) {
    require(horizon >= 1, Errc::invalid_argument, "Blume horizon must be >= 1");
    return Blume{horizon};
}

inline AveragingMethod exp_weighted(double decay) {
    require(decay > 0.0 && decay <= 1.0, Errc::decay_out_of_range,
            "decay must lie in (0, 1], got " + std::to_string(decay));
    return ExpWeighted{decay};
}

namespace detail {

inline std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void require_non_empty(std::span<const double> returns) {
    require(!returns.empty(), Errc::empty_input, "cannot average an empty sample");
}

}  // namespace detail

inline std::string to_string(const AveragingMethod& method) {
    struct Visitor {
        std::string operator()(Arithmetic) const { return "arithmetic"; }
        std::string operator()(Geometric) const { return "geometric"; }
        std::string operator()(Blume b) const { return "blume:" + std::to_string(b.horizon); }
        std::string operator()(ExpWeighted e) const { return "exp:" + detail::shortest(e.decay); }
    };
    return std::visit(Visitor{}, method);
}

/// Accepts "arithmetic", "geometric", "blume:<horizon>" and "exp:<decay>",
/// the same spelling `to_string` produces.
inline AveragingMethod parse_averaging_method(std::string_view text) {
    if (text == "arithmetic") return Arithmetic{};
    if (text == "geometric") return Geometric{};
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const auto kind = text.substr(0, colon);
        const auto arg = text.substr(colon + 1);
        if (kind == "blume") {
            int horizon = 0;
            const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), horizon);
            if (res.ec == std::errc{} && res.ptr == arg.data() + arg.size()) return blume(horizon);
        } else if (kind == "exp") {
            double decay = 0.0;
            const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), decay);
            if (res.ec == std::errc{} && res.ptr == arg.data() + arg.size()) return exp_weighted(decay);
        }
    }
    throw Error(Errc::invalid_argument, "unknown averaging method '" + std::string(text) + "'");
}

inline double arithmetic_mean(std::span<const double> returns) {
    detail::require_non_empty(returns);
    // Accumulate deviations from the first element: constant samples come
    // back exactly, and the sum stays well-conditioned.
    const double anchor = returns.front();
    double acc = 0.0;
    for (const double r : returns) acc += r - anchor;
    return anchor + acc / static_cast<double>(returns.size());
}

inline double geometric_mean(std::span<const double> returns) {
    detail::require_non_empty(returns);
    bool constant = true;
    for (const double r : returns) {
        require(r > -1.0, Errc::return_below_minus_one,
                "return " + std::to_string(r) + " cannot be compounded");
        constant = constant && r == returns.front();
    }
    // Equality case of the AM-GM inequality, returned exactly.
    if (constant) return returns.front();
    double log_growth = 0.0;
    for (const double r : returns) log_growth += std::log1p(r);
    return std::expm1(log_growth / static_cast<double>(returns.size()));
}

/// ((T-N)/(T-1)) * arithmetic + ((N-1)/(T-1)) * geometric.
inline double blume_blend(std::span<const double> returns, int horizon) {
    detail::require_non_empty(returns);
    const auto sample = static_cast<long long>(returns.size());
    require(horizon >= 1, Errc::invalid_argument, "Blume horizon must be >= 1");
    require(horizon <= sample, Errc::horizon_exceeds_sample,
            "horizon " + std::to_string(horizon) + " exceeds sample of " + std::to_string(sample));
    if (sample == 1) return returns.front();
    const double arith = arithmetic_mean(returns);
    if (horizon == 1) return arith;
    const double geom = geometric_mean(returns);
    if (horizon == sample) return geom;
    const double t = static_cast<double>(sample);
    const double n = static_cast<double>(horizon);
    return ((t - n) / (t - 1.0)) * arith + ((n - 1.0) / (t - 1.0)) * geom;
}

inline double exp_weighted_mean(std::span<const double> returns, double decay) {
    detail::require_non_empty(returns);
    require(decay > 0.0 && decay <= 1.0, Errc::decay_out_of_range,
            "decay must lie in (0, 1], got " + std::to_string(decay));
    const double anchor = returns.front();
    double weight_sum = 0.0;
    double acc = 0.0;
    const std::size_t last = returns.size() - 1;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        const double weight = std::pow(decay, static_cast<double>(last - i));
        acc += weight * (returns[i] - anchor);
        weight_sum += weight;
    }
    return anchor + acc / weight_sum;
}

inline double average(std::span<const double> returns, const AveragingMethod& method) {
    struct Visitor {
        std::span<const double> r;
        double operator()(Arithmetic) const { return arithmetic_mean(r); }
        double operator()(Geometric) const { return geometric_mean(r); }
        double operator()(Blume b) const { return blume_blend(r, b.horizon); }
        double operator()(ExpWeighted e) const { return exp_weighted_mean(r, e.decay); }
    };
    return std::visit(Visitor{returns}, method);
}

}  // namespace erp
