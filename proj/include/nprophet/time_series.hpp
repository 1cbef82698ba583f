#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nprophet {

using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;

/// Parses `YYYY-MM-DD`, `YYYY-MM-DD HH:MM[:SS]` and the `T`-separated form,
/// with an optional `Z` or `+HH:MM` offset. Offsets are folded into UTC.
Timestamp parse_timestamp(std::string_view text);

/// `YYYY-MM-DD` for midnight instants, `YYYY-MM-DD HH:MM:SS` otherwise.
std::string format_timestamp(Timestamp ts);

double days_since_epoch(Timestamp ts);

/// Modal spacing between consecutive timestamps; ties go to the smaller delta.
Duration infer_frequency(std::span<const Timestamp> timestamps);

/// Regularly spaced scalar observations. NaN marks a missing value.
struct TimeSeries {
    std::vector<Timestamp> timestamps;
    std::vector<double> values;
    Duration frequency{0};

    std::size_t size() const { return values.size(); }
    std::size_t missing_count() const;

    /// Throws ParseError unless timestamps are strictly increasing with
    /// spacing equal to `frequency` and the series is non-empty.
    void validate() const;
};

/// Target series plus named covariate columns aligned to the same rows.
struct Dataset {
    std::vector<Timestamp> ds;
    std::vector<double> y;
    std::map<std::string, std::vector<double>> columns;
    Duration frequency{0};

    std::size_t size() const { return ds.size(); }
    bool has_column(const std::string& name) const { return columns.contains(name); }
    const std::vector<double>& column(const std::string& name) const;

    TimeSeries target() const { return {ds, y, frequency}; }

    /// Rows [begin, end).
    Dataset slice(std::size_t begin, std::size_t end) const;

    /// Appends `periods` rows after the last timestamp with every value missing.
    Dataset extend_future(std::size_t periods) const;
};

/// Sorts by timestamp, infers the frequency when none is set, and inserts
/// rows of missing values wherever a timestamp is absent from the grid.
/// Throws ParseError on duplicate or off-grid timestamps.
Dataset regularize(Dataset data);

} // namespace nprophet
