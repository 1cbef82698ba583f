#pragma once

#include "nprophet/fit.hpp"
#include "nprophet/time_series.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nprophet {

/// One row per input timestamp. `yhat<i>` holds the forecast for the row
/// issued i steps earlier; NaN marks a row without such a forecast. With
/// decomposition the component columns of each age sum to its yhat.
struct ForecastFrame {
    std::vector<Timestamp> ds;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values; // values[column][row]

    std::size_t rows() const { return ds.size(); }
    bool has_column(std::string_view name) const;
    const std::vector<double>& column(std::string_view name) const;
    std::vector<double>& add_column(std::string name);
};

struct PredictOptions {
    bool decompose = false;
    Exec exec = Exec::Parallel;
};

/// Throws MissingRegressor when a future regressor is unknown on any row and
/// InsufficientData when the rows cannot hold one lag window plus horizon.
ForecastFrame predict(const FittedModel& fitted, const Dataset& data, const PredictOptions& options = {});

/// Missing values are written as empty cells.
void write_forecast(std::ostream& out, const ForecastFrame& frame);
ForecastFrame read_forecast(std::istream& in);

/// Long format (ds, component, value) for external plotting; nulls skipped.
void write_plot_data(std::ostream& out, const ForecastFrame& frame);

} // namespace nprophet
