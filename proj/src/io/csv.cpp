#include "nprophet/csv.hpp"

#include "nprophet/errors.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace nprophet {

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') {
            cell.pop_back();
        }
        cells.push_back(cell);
    }
    if (!line.empty() && (line.back() == ',')) {
        cells.emplace_back();
    }
    return cells;
}

} // namespace

std::size_t CsvTable::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw ParseError(fmt::format("missing column '{}'", name));
}

CsvTable read_csv_table(std::istream& in)
{
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty CSV input");
    }
    table.header = split_line(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") {
            continue;
        }
        auto cells = split_line(line);
        if (cells.size() != table.header.size()) {
            throw ParseError(fmt::format("line {}: expected {} fields, got {}", lineno,
                                         table.header.size(), cells.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

double parse_value(std::string_view cell)
{
    while (!cell.empty() && cell.front() == ' ') {
        cell.remove_prefix(1);
    }
    while (!cell.empty() && cell.back() == ' ') {
        cell.remove_suffix(1);
    }
    if (cell.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::string text(cell);
    if (text == "NaN" || text == "nan" || text == "NAN" || text == "NA") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError(fmt::format("not a number: '{}'", text));
    }
    if (used != text.size()) {
        throw ParseError(fmt::format("not a number: '{}'", text));
    }
    return value;
}

std::string format_value(double value)
{
    if (std::isnan(value)) {
        return {};
    }
    return fmt::format("{}", value);
}

Dataset read_dataset(std::istream& in, bool require_y)
{
    const CsvTable table = read_csv_table(in);
    const std::size_t ds_col = table.index_of("ds");
    std::ptrdiff_t y_col = -1;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == "y") {
            y_col = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (y_col < 0 && require_y) {
        throw ParseError("missing column 'y'");
    }

    Dataset data;
    const std::size_t n = table.rows.size();
    data.ds.reserve(n);
    data.y.reserve(n);
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c != ds_col && static_cast<std::ptrdiff_t>(c) != y_col) {
            data.columns[table.header[c]].reserve(n);
        }
    }
    for (const auto& row : table.rows) {
        data.ds.push_back(parse_timestamp(row[ds_col]));
        data.y.push_back(y_col >= 0 ? parse_value(row[static_cast<std::size_t>(y_col)])
                                    : std::numeric_limits<double>::quiet_NaN());
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (c != ds_col && static_cast<std::ptrdiff_t>(c) != y_col) {
                data.columns[table.header[c]].push_back(parse_value(row[c]));
            }
        }
    }
    return regularize(std::move(data));
}

Dataset read_dataset_file(const std::filesystem::path& path, bool require_y)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("cannot open '{}'", path.string()));
    }
    return read_dataset(in, require_y);
}

void write_dataset(std::ostream& out, const Dataset& data)
{
    out << "ds,y";
    for (const auto& [name, col] : data.columns) {
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t r = 0; r < data.size(); ++r) {
        out << format_timestamp(data.ds[r]) << ',' << format_value(data.y[r]);
        for (const auto& [name, col] : data.columns) {
            out << ',' << format_value(col[r]);
        }
        out << '\n';
    }
}

} // namespace nprophet
