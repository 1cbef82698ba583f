#include "nprophet/events.hpp"

#include "nprophet/csv.hpp"
#include "nprophet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

namespace nprophet {

namespace detail {
extern const char* const kHolidayTable;
}

namespace {

using namespace std::chrono;

Date easter_sunday(int y)
{
    // anonymous Gregorian computus
    const int a = y % 19;
    const int b = y / 100;
    const int c = y % 100;
    const int d = b / 4;
    const int e = b % 4;
    const int f = (b + 8) / 25;
    const int g = (b - f + 1) / 3;
    const int h = (19 * a + b - d - g + 15) % 30;
    const int i = c / 4;
    const int k = c % 4;
    const int l = (32 + 2 * e + 2 * i - h - k) % 7;
    const int m = (a + 11 * h + 22 * l) / 451;
    const int month_num = (h + l - 7 * m + 114) / 31;
    const int day_num = ((h + l - 7 * m + 114) % 31) + 1;
    return sys_days{year{y} / month{static_cast<unsigned>(month_num)} / day{static_cast<unsigned>(day_num)}};
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        out.push_back(part);
    }
    return out;
}

Date resolve_rule(const std::string& rule, int y)
{
    const auto parts = split(rule, ':');
    if (parts.size() == 2 && parts[0] == "fixed") {
        const auto md = split(parts[1], '-');
        return sys_days{year{y} / month{static_cast<unsigned>(std::stoi(md.at(0)))} /
                        day{static_cast<unsigned>(std::stoi(md.at(1)))}};
    }
    if (parts.size() == 2 && parts[0] == "easter") {
        return easter_sunday(y) + days{std::stoi(parts[1])};
    }
    if (parts.size() == 4 && parts[0] == "nth") {
        const month m{static_cast<unsigned>(std::stoi(parts[1]))};
        const int n = std::stoi(parts[2]);
        const weekday wd{static_cast<unsigned>(std::stoi(parts[3]))};
        if (n < 0) {
            return sys_days{year{y} / m / wd[last]};
        }
        return sys_days{year{y} / m / wd[static_cast<unsigned>(n)]};
    }
    throw ParseError(fmt::format("bad holiday rule '{}'", rule));
}

struct HolidayRow {
    std::string country;
    std::string name;
    std::string rule;
};

const std::vector<HolidayRow>& holiday_rows()
{
    static const std::vector<HolidayRow> rows = [] {
        std::istringstream in(detail::kHolidayTable);
        const CsvTable table = read_csv_table(in);
        const auto c = table.index_of("country");
        const auto h = table.index_of("holiday");
        const auto r = table.index_of("rule");
        std::vector<HolidayRow> out;
        for (const auto& row : table.rows) {
            out.push_back({row[c], row[h], row[r]});
        }
        return out;
    }();
    return rows;
}

} // namespace

std::string event_column_name(std::string_view event, int offset)
{
    return fmt::format("{}_{}", event, offset);
}

EventMatrix event_features(std::span<const Timestamp> timestamps, std::span<const Event> events)
{
    EventMatrix m;
    m.rows = timestamps.size();
    for (const auto& e : events) {
        if (e.lower_window > 0 || e.upper_window < 0) {
            throw ParseError(fmt::format("event '{}' window must contain offset 0", e.name));
        }
        for (int o = e.lower_window; o <= e.upper_window; ++o) {
            m.columns.push_back(event_column_name(e.name, o));
        }
    }
    m.values.assign(m.rows * m.cols(), 0.0);
    if (m.cols() == 0) {
        return m;
    }
    std::size_t col = 0;
    for (const auto& e : events) {
        const std::set<Date> occurrences(e.dates.begin(), e.dates.end());
        for (int o = e.lower_window; o <= e.upper_window; ++o, ++col) {
            for (std::size_t r = 0; r < m.rows; ++r) {
                const Date date = floor<days>(timestamps[r]);
                if (occurrences.contains(date - days{o})) {
                    m.values[r * m.cols() + col] = 1.0;
                }
            }
        }
    }
    return m;
}

std::vector<Date> dates_from_indicator(std::span<const Timestamp> timestamps,
                                       std::span<const double> indicator)
{
    if (timestamps.size() != indicator.size()) {
        throw LengthMismatch("indicator and timestamps differ in length");
    }
    std::vector<Date> out;
    for (std::size_t r = 0; r < timestamps.size(); ++r) {
        if (!std::isnan(indicator[r]) && indicator[r] != 0.0) {
            const Date d = floor<days>(timestamps[r]);
            if (out.empty() || out.back() != d) {
                out.push_back(d);
            }
        }
    }
    return out;
}

std::vector<Event> country_holidays(std::string_view country, int first_year, int last_year)
{
    std::vector<Event> out;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& row : holiday_rows()) {
        if (row.country != country) {
            continue;
        }
        auto [it, inserted] = index.try_emplace(row.name, out.size());
        if (inserted) {
            out.push_back(Event{row.name, {}, 0, 0, ComponentMode::Additive, 0.0});
        }
        for (int y = first_year; y <= last_year; ++y) {
            out[it->second].dates.push_back(resolve_rule(row.rule, y));
        }
    }
    if (out.empty()) {
        throw UnknownCountry(fmt::format("no holiday table for country '{}'", country));
    }
    return out;
}

std::vector<std::string> holiday_countries()
{
    std::vector<std::string> out;
    for (const auto& row : holiday_rows()) {
        if (std::find(out.begin(), out.end(), row.country) == out.end()) {
            out.push_back(row.country);
        }
    }
    return out;
}

} // namespace nprophet
