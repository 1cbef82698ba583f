#pragma once

#include "nprophet/time_series.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace nprophet {

struct ImputeOptions {
    std::size_t linear_limit = 5;   // values filled from each side of a gap
    std::size_t rolling_limit = 20; // consecutive values filled by rolling mean
    std::size_t rolling_window = 30;
    std::size_t abort_limit = 30; // longer gaps abort imputation
};

/// Returned instead of a series when a gap is too long to fill. The caller is
/// expected to drop the missing positions.
struct ImputeAbort {
    std::size_t gap_start = 0;
    std::size_t gap_length = 0;
};

using ImputeResult = std::variant<TimeSeries, ImputeAbort>;

/// Three-stage fill: linear interpolation between the known anchors of each
/// gap (up to `linear_limit` from each edge), then a centred rolling mean for
/// what remains, aborting when any gap exceeds `abort_limit`. Observed values
/// are never modified.
ImputeResult impute_missing(const TimeSeries& series, const ImputeOptions& options = {});

/// Same procedure on a bare value vector.
std::variant<std::vector<double>, ImputeAbort> impute_values(std::span<const double> values,
                                                             const ImputeOptions& options = {});

/// Event indicators: missing means the event did not happen.
std::vector<double> impute_events(std::span<const double> indicator);

} // namespace nprophet
