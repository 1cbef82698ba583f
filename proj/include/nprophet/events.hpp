#pragma once

#include "nprophet/component_mode.hpp"
#include "nprophet/time_series.hpp"

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nprophet {

using Date = std::chrono::sys_days;

/// A recurring or one-off event. The window [lower, upper] (lower <= 0 <=
/// upper, in days) expands into one indicator per offset.
struct Event {
    std::string name;
    std::vector<Date> dates;
    int lower_window = 0;
    int upper_window = 0;
    ComponentMode mode = ComponentMode::Additive;
    double reg = 0.0;

    std::size_t column_count() const { return static_cast<std::size_t>(upper_window - lower_window + 1); }
};

/// Row-major binary feature matrix, one column per event per window offset.
struct EventMatrix {
    std::vector<std::string> columns;
    std::size_t rows = 0;
    std::vector<double> values;

    std::size_t cols() const { return columns.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
};

/// Column name for one window offset of an event, e.g. "xmas_-1".
std::string event_column_name(std::string_view event, int offset);

/// Entry (r, c) is 1 iff the calendar date of timestamps[r] equals an
/// occurrence date plus the column's offset.
EventMatrix event_features(std::span<const Timestamp> timestamps, std::span<const Event> events);

/// Occurrence dates read from a 0/1 indicator column (missing counts as 0).
std::vector<Date> dates_from_indicator(std::span<const Timestamp> timestamps,
                                       std::span<const double> indicator);

/// Country holidays from the bundled table, one Event per named holiday with
/// dates for every year in [first_year, last_year]. Throws UnknownCountry.
std::vector<Event> country_holidays(std::string_view country, int first_year, int last_year);

/// Country codes present in the bundled table.
std::vector<std::string> holiday_countries();

} // namespace nprophet
