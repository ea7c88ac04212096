#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace erp {

enum class Errc {
    // series construction / timeseries
    empty_series,
    unordered_dates,
    non_finite_value,
    return_below_minus_one,
    empty_intersection,
    non_positive_price,
    too_short,
    calendar_precedes_data,
    invalid_argument,
    // averaging / historical
    empty_input,
    horizon_exceeds_sample,
    decay_out_of_range,
    empty_window,
    // capm
    degenerate_regressor,
    too_few_observations,
    negative_sigma,
    length_mismatch,
    weights_not_normalized,
    rank_deficient,
    invalid_parameters,
    // implied
    rate_below_minus_one,
    non_convergent,
    no_root_in_bracket,
    invalid_inputs,
    non_positive_eps,
    // ingest
    file_not_found,
    missing_column,
    bad_date,
    bad_value,
    duplicate_date,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::empty_series: return "EmptySeries";
    case Errc::unordered_dates: return "UnorderedDates";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::return_below_minus_one: return "ReturnBelowMinusOne";
    case Errc::empty_intersection: return "EmptyIntersection";
    case Errc::non_positive_price: return "NonPositivePrice";
    case Errc::too_short: return "TooShort";
    case Errc::calendar_precedes_data: return "CalendarPrecedesData";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::empty_input: return "EmptyInput";
    case Errc::horizon_exceeds_sample: return "HorizonExceedsSample";
    case Errc::decay_out_of_range: return "DecayOutOfRange";
    case Errc::empty_window: return "EmptyWindow";
    case Errc::degenerate_regressor: return "DegenerateRegressor";
    case Errc::too_few_observations: return "TooFewObservations";
    case Errc::negative_sigma: return "NegativeSigma";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::weights_not_normalized: return "WeightsNotNormalized";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::invalid_parameters: return "InvalidParameters";
    case Errc::rate_below_minus_one: return "RateBelowMinusOne";
    case Errc::non_convergent: return "NonConvergent";
    case Errc::no_root_in_bracket: return "NoRootInBracket";
    case Errc::invalid_inputs: return "InvalidInputs";
    case Errc::non_positive_eps: return "NonPositiveEps";
    case Errc::file_not_found: return "FileNotFound";
    case Errc::missing_column: return "MissingColumn";
    case Errc::bad_date: return "BadDate";
    case Errc::bad_value: return "BadValue";
    case Errc::duplicate_date: return "DuplicateDate";
    }
    return "Unknown";
}

/// Numerical failures map to CLI exit status 2, everything else to 1.
constexpr bool is_numerical_failure(Errc code) noexcept {
    switch (code) {
    case Errc::non_convergent:
    case Errc::no_root_in_bracket:
    case Errc::degenerate_regressor:
    case Errc::rank_deficient:
        return true;
    default:
        return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline void require(bool condition, Errc code, const std::string& detail) {
    if (!condition) throw Error(code, detail);
}

}  // namespace erp
