#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "erp/timeseries.hpp"

namespace erp {

/// Where and how to read one dated series from a CSV file.
struct SeriesFileSpec {
    std::filesystem::path path;
    std::string date_column = "date";
    std::string value_column = "value";
    std::string date_format = "%Y-%m-%d";
    double value_scale = 1.0;  // e.g. 0.01 turns percent yields into fractions
};

namespace csv {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

inline bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace csv

/// Parses CSV text. `source` names the input in error messages.
inline DatedSeries parse_series_text(std::string_view text, const SeriesFileSpec& spec,
                                     const std::string& source = "<memory>") {
    require(spec.value_scale > 0.0 && std::isfinite(spec.value_scale), Errc::invalid_argument,
            "value_scale must be positive");
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::pair<std::string_view, std::size_t>> lines;  // content, 1-based line number
    {
        std::size_t start = 0, number = 1;
        while (start <= text.size()) {
            const auto nl = text.find('\n', start);
            const auto line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
            if (!csv::blank(line)) lines.emplace_back(line, number);
            if (nl == std::string_view::npos) break;
            start = nl + 1;
            ++number;
        }
    }
    require(!lines.empty(), Errc::missing_column, source + ": file has no header row");

    const auto header = csv::split(lines.front().first);
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        require(it != header.end(), Errc::missing_column, source + ": no column named '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t date_col = column(spec.date_column);
    const std::size_t value_col = column(spec.value_column);

    std::vector<Observation> obs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [line, number] = lines[i];
        const auto fields = csv::split(line);
        const std::string where = source + " line " + std::to_string(number);

        const auto date_text = date_col < fields.size() ? fields[date_col] : std::string_view{};
        const auto date = parse_date(date_text, spec.date_format);
        require(date.has_value(), Errc::bad_date, where + ": '" + std::string(date_text) + "'");

        const auto value_text = value_col < fields.size() ? fields[value_col] : std::string_view{};
        double value = 0.0;
        const auto res = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        require(!value_text.empty() && res.ec == std::errc{} &&
                    res.ptr == value_text.data() + value_text.size() && std::isfinite(value),
                Errc::bad_value, where + ": '" + std::string(value_text) + "'");
        obs.push_back({*date, value * spec.value_scale});
    }
    require(!obs.empty(), Errc::empty_series, source + ": no data rows");

    std::stable_sort(obs.begin(), obs.end(),
                     [](const Observation& a, const Observation& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < obs.size(); ++i)
        require(obs[i].date != obs[i - 1].date, Errc::duplicate_date,
                source + ": " + format_date(obs[i].date));
    return DatedSeries(std::move(obs));
}

inline DatedSeries parse_series(const SeriesFileSpec& spec) {
    std::ifstream in(spec.path, std::ios::binary);
    require(in.good(), Errc::file_not_found, spec.path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_series_text(buf.str(), spec, spec.path.string());
}

/// ISO dates and shortest round-trip decimals, so parse_series reads back
/// the identical series.
inline void write_series(std::ostream& os, const DatedSeries& series, std::string_view date_column = "date",
                         std::string_view value_column = "value") {
    os << date_column << ',' << value_column << '\n';
    char buf[32];
    for (const auto& o : series) {
        const auto res = std::to_chars(buf, buf + sizeof buf, o.value);
        os << format_date(o.date) << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
    }
}

}  // namespace erp
