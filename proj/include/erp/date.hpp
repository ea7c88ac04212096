#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "erp/error.hpp"

namespace erp {

/// Calendar day. No business-day or holiday conventions are modeled.
using Date = std::chrono::sys_days;

inline Date make_date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    require(ymd.ok(), Errc::bad_date,
            "invalid calendar date " + std::to_string(year) + "-" + std::to_string(month) + "-" +
                std::to_string(day));
    return Date{ymd};
}

inline int year_of(Date date) {
    return static_cast<int>(std::chrono::year_month_day{date}.year());
}

inline std::string format_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

/// Parses `text` against a strftime-like pattern. Supported directives:
/// %Y (4-digit year), %m (1-2 digit month), %d (1-2 digit day), %%.
/// Any other character must match literally. Returns nullopt on mismatch
/// or on an impossible calendar date.
inline std::optional<Date> parse_date(std::string_view text, std::string_view format = "%Y-%m-%d") {
    int year = 0;
    unsigned month = 0, day = 0;
    bool have_y = false, have_m = false, have_d = false;
    std::size_t pos = 0;

    auto read_number = [&](std::size_t min_digits, std::size_t max_digits, auto& out) {
        std::size_t end = pos;
        while (end < text.size() && end - pos < max_digits && text[end] >= '0' && text[end] <= '9')
            ++end;
        if (end - pos < min_digits) return false;
        const auto res = std::from_chars(text.data() + pos, text.data() + end, out);
        if (res.ec != std::errc{}) return false;
        pos = end;
        return true;
    };

    for (std::size_t f = 0; f < format.size(); ++f) {
        if (format[f] == '%' && f + 1 < format.size()) {
            const char directive = format[++f];
            bool ok = false;
            switch (directive) {
            case 'Y': ok = read_number(4, 4, year); have_y = ok; break;
            case 'm': ok = read_number(1, 2, month); have_m = ok; break;
            case 'd': ok = read_number(1, 2, day); have_d = ok; break;
            case '%': ok = pos < text.size() && text[pos] == '%'; pos += ok ? 1 : 0; break;
            default: return std::nullopt;
            }
            if (!ok) return std::nullopt;
        } else {
            if (pos >= text.size() || text[pos] != format[f]) return std::nullopt;
            ++pos;
        }
    }
    if (pos != text.size() || !have_y || !have_m || !have_d) return std::nullopt;

    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

}  // namespace erp
