#pragma once

#include "nprophet/time_series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nprophet {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column, or throws ParseError naming it.
    std::size_t index_of(std::string_view name) const;
};

/// Comma separated, first line is the header. Quoted fields are not supported.
CsvTable read_csv_table(std::istream& in);

/// Empty cells and `NaN` (any case) read as missing.
double parse_value(std::string_view cell);

/// Shortest round-trip decimal, empty string for missing.
std::string format_value(double value);

/// Requires a `ds` column; `y` is required unless `require_y` is false, in
/// which case an absent column reads as all-missing. Other columns become
/// covariates. The result is regularized onto its frequency grid.
Dataset read_dataset(std::istream& in, bool require_y = true);
Dataset read_dataset_file(const std::filesystem::path& path, bool require_y = true);

void write_dataset(std::ostream& out, const Dataset& data);

} // namespace nprophet
