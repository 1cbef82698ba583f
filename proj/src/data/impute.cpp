#include "nprophet/impute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nprophet {

namespace {

struct Gap {
    std::size_t start;
    std::size_t length;
};

std::vector<Gap> find_gaps(std::span<const double> values)
{
    std::vector<Gap> gaps;
    std::size_t i = 0;
    while (i < values.size()) {
        if (!std::isnan(values[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < values.size() && std::isnan(values[j])) {
            ++j;
        }
        gaps.push_back({i, j - i});
        i = j;
    }
    return gaps;
}

void linear_fill(std::vector<double>& out, const Gap& gap, std::size_t limit)
{
    const std::size_t end = gap.start + gap.length; // one past the gap
    const bool has_left = gap.start > 0;
    const bool has_right = end < out.size();
    if (!has_left && !has_right) {
        return;
    }
    const std::size_t fill_each = std::min(limit, gap.length);
    if (has_left && has_right) {
        const double left = out[gap.start - 1];
        const double right = out[end];
        const double span = static_cast<double>(gap.length + 1);
        auto interp = [&](std::size_t pos) {
            const double frac = static_cast<double>(pos - (gap.start - 1)) / span;
            return left + (right - left) * frac;
        };
        for (std::size_t k = 0; k < fill_each; ++k) {
            out[gap.start + k] = interp(gap.start + k);
            out[end - 1 - k] = interp(end - 1 - k);
        }
        return;
    }
    // one-sided gap at a series edge: carry the single anchor outward
    if (has_left) {
        for (std::size_t k = 0; k < fill_each; ++k) {
            out[gap.start + k] = out[gap.start - 1];
        }
    } else {
        for (std::size_t k = 0; k < fill_each; ++k) {
            out[end - 1 - k] = out[end];
        }
    }
}

} // namespace

std::variant<std::vector<double>, ImputeAbort> impute_values(std::span<const double> values,
                                                             const ImputeOptions& options)
{
    const auto gaps = find_gaps(values);
    for (const auto& gap : gaps) {
        if (gap.length > options.abort_limit) {
            return ImputeAbort{gap.start, gap.length};
        }
    }
    std::vector<double> out(values.begin(), values.end());
    if (gaps.empty()) {
        return out;
    }

    for (const auto& gap : gaps) {
        linear_fill(out, gap, options.linear_limit);
    }

    // Rolling means are taken over the state after linear filling so that
    // the order of filling inside a gap does not matter.
    const std::vector<double> snapshot = out;
    const auto half_before = static_cast<std::ptrdiff_t>(options.rolling_window / 2);
    const auto half_after = static_cast<std::ptrdiff_t>(options.rolling_window) - half_before - 1;
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    std::size_t run = 0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (!std::isnan(snapshot[static_cast<std::size_t>(i)])) {
            run = 0;
            continue;
        }
        ++run;
        if (run > options.rolling_limit) {
            continue;
        }
        double sum = 0.0;
        std::size_t count = 0;
        for (auto j = std::max<std::ptrdiff_t>(0, i - half_before); j <= std::min(n - 1, i + half_after);
             ++j) {
            const double v = snapshot[static_cast<std::size_t>(j)];
            if (!std::isnan(v)) {
                sum += v;
                ++count;
            }
        }
        if (count > 0) {
            out[static_cast<std::size_t>(i)] = sum / static_cast<double>(count);
        }
    }
    return out;
}

ImputeResult impute_missing(const TimeSeries& series, const ImputeOptions& options)
{
    auto result = impute_values(series.values, options);
    if (auto* abort = std::get_if<ImputeAbort>(&result)) {
        return *abort;
    }
    return TimeSeries{series.timestamps, std::get<std::vector<double>>(std::move(result)),
                      series.frequency};
}

std::vector<double> impute_events(std::span<const double> indicator)
{
    std::vector<double> out(indicator.begin(), indicator.end());
    std::replace_if(out.begin(), out.end(), [](double v) { return std::isnan(v); }, 0.0);
    return out;
}

} // namespace nprophet
