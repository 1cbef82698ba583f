#include "nprophet/time_series.hpp"

#include "nprophet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace nprophet {

namespace {

int parse_int(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole)
{
    if (pos + len > text.size()) {
        throw ParseError(fmt::format("malformed timestamp '{}'", whole));
    }
    int value = 0;
    auto first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc{} || ptr != first + len) {
        throw ParseError(fmt::format("malformed timestamp '{}'", whole));
    }
    return value;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Timestamp parse_timestamp(std::string_view raw)
{
    using namespace std::chrono;
    const auto text = trim(raw);
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError(fmt::format("malformed timestamp '{}'", raw));
    }
    const year_month_day date{year{parse_int(text, 0, 4, raw)},
                              month{static_cast<unsigned>(parse_int(text, 5, 2, raw))},
                              day{static_cast<unsigned>(parse_int(text, 8, 2, raw))}};
    if (!date.ok()) {
        throw ParseError(fmt::format("invalid calendar date '{}'", raw));
    }
    Timestamp ts = sys_days{date};

    std::size_t pos = 10;
    if (pos < text.size() && (text[pos] == ' ' || text[pos] == 'T')) {
        ++pos;
        const int hh = parse_int(text, pos, 2, raw);
        if (pos + 2 >= text.size() || text[pos + 2] != ':') {
            throw ParseError(fmt::format("malformed timestamp '{}'", raw));
        }
        const int mm = parse_int(text, pos + 3, 2, raw);
        pos += 5;
        int ss = 0;
        if (pos < text.size() && text[pos] == ':') {
            ss = parse_int(text, pos + 1, 2, raw);
            pos += 3;
            // fractional seconds are truncated
            if (pos < text.size() && text[pos] == '.') {
                ++pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    ++pos;
                }
            }
        }
        if (hh > 23 || mm > 59 || ss > 60) {
            throw ParseError(fmt::format("invalid time of day '{}'", raw));
        }
        ts += hours{hh} + minutes{mm} + seconds{ss};
    }
    if (pos < text.size()) {
        const char sign = text[pos];
        if (sign == 'Z' && pos + 1 == text.size()) {
            pos += 1;
        } else if (sign == '+' || sign == '-') {
            const int oh = parse_int(text, pos + 1, 2, raw);
            int om = 0;
            if (pos + 3 < text.size()) {
                const std::size_t mpos = text[pos + 3] == ':' ? pos + 4 : pos + 3;
                om = parse_int(text, mpos, 2, raw);
                pos = mpos + 2;
            } else {
                pos += 3;
            }
            const auto offset = hours{oh} + minutes{om};
            ts += sign == '+' ? -offset : offset;
        }
        if (pos != text.size()) {
            throw ParseError(fmt::format("malformed timestamp '{}'", raw));
        }
    }
    return ts;
}

std::string format_timestamp(Timestamp ts)
{
    using namespace std::chrono;
    const auto day_start = floor<days>(ts);
    const year_month_day date{day_start};
    const auto secs = (ts - day_start).count();
    if (secs == 0) {
        return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                           static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    }
    return fmt::format("{:04d}-{:02d}-{:02d} {:02d}:{:02d}:{:02d}", static_cast<int>(date.year()),
                       static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                       secs / 3600, (secs / 60) % 60, secs % 60);
}

double days_since_epoch(Timestamp ts)
{
    return static_cast<double>(ts.time_since_epoch().count()) / 86400.0;
}

Duration infer_frequency(std::span<const Timestamp> timestamps)
{
    if (timestamps.size() < 2) {
        throw InsufficientData("at least two timestamps are needed to infer a frequency");
    }
    std::map<Duration::rep, std::size_t> counts;
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        const auto delta = (timestamps[i] - timestamps[i - 1]).count();
        if (delta > 0) {
            ++counts[delta];
        }
    }
    if (counts.empty()) {
        throw ParseError("timestamps are not increasing");
    }
    // std::map iterates ascending, so the first maximum is the smallest delta
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second > best->second) {
            best = it;
        }
    }
    return Duration{best->first};
}

std::size_t TimeSeries::missing_count() const
{
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [](double v) { return std::isnan(v); }));
}

void TimeSeries::validate() const
{
    if (values.empty()) {
        throw ParseError("time series is empty");
    }
    if (timestamps.size() != values.size()) {
        throw ParseError("timestamp and value counts differ");
    }
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (timestamps[i] - timestamps[i - 1] != frequency) {
            throw ParseError(fmt::format("irregular spacing at {}", format_timestamp(timestamps[i])));
        }
    }
}

const std::vector<double>& Dataset::column(const std::string& name) const
{
    auto it = columns.find(name);
    if (it == columns.end()) {
        throw ParseError(fmt::format("missing column '{}'", name));
    }
    return it->second;
}

Dataset Dataset::slice(std::size_t begin, std::size_t end) const
{
    end = std::min(end, size());
    begin = std::min(begin, end);
    Dataset out;
    out.frequency = frequency;
    out.ds.assign(ds.begin() + begin, ds.begin() + end);
    out.y.assign(y.begin() + begin, y.begin() + end);
    for (const auto& [name, col] : columns) {
        out.columns[name].assign(col.begin() + begin, col.begin() + end);
    }
    return out;
}

Dataset Dataset::extend_future(std::size_t periods) const
{
    if (ds.empty()) {
        throw InsufficientData("cannot extend an empty dataset");
    }
    if (frequency.count() <= 0) {
        throw ParseError("dataset frequency is unknown");
    }
    Dataset out = *this;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i <= periods; ++i) {
        out.ds.push_back(ds.back() + frequency * static_cast<Duration::rep>(i));
        out.y.push_back(nan);
        for (auto& [name, col] : out.columns) {
            col.push_back(nan);
        }
    }
    return out;
}

Dataset regularize(Dataset data)
{
    const std::size_t n = data.size();
    if (n == 0) {
        throw ParseError("dataset is empty");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return data.ds[a] < data.ds[b]; });
    for (std::size_t i = 1; i < n; ++i) {
        if (data.ds[order[i]] == data.ds[order[i - 1]]) {
            throw ParseError(fmt::format("duplicate timestamp {}", format_timestamp(data.ds[order[i]])));
        }
    }
    if (data.frequency.count() <= 0) {
        if (n < 2) {
            data.frequency = std::chrono::days{1};
        } else {
            std::vector<Timestamp> sorted(n);
            for (std::size_t i = 0; i < n; ++i) {
                sorted[i] = data.ds[order[i]];
            }
            data.frequency = infer_frequency(sorted);
        }
    }
    const auto freq = data.frequency.count();
    const Timestamp first = data.ds[order.front()];
    const auto span = (data.ds[order.back()] - first).count();
    if (span % freq != 0) {
        throw ParseError("timestamps do not lie on a regular grid");
    }
    const auto rows = static_cast<std::size_t>(span / freq) + 1;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    Dataset out;
    out.frequency = data.frequency;
    out.ds.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        out.ds[r] = first + data.frequency * static_cast<Duration::rep>(r);
    }
    out.y.assign(rows, nan);
    for (const auto& [name, col] : data.columns) {
        out.columns[name].assign(rows, nan);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto src = order[i];
        const auto offset = (data.ds[src] - first).count();
        if (offset % freq != 0) {
            throw ParseError(fmt::format("timestamp {} is off the {}s grid",
                                         format_timestamp(data.ds[src]), freq));
        }
        const auto r = static_cast<std::size_t>(offset / freq);
        out.y[r] = data.y[src];
        for (const auto& [name, col] : data.columns) {
            out.columns[name][r] = col[src];
        }
    }
    return out;
}

} // namespace nprophet
