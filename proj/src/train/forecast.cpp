#include "nprophet/forecast.hpp"

#include "nprophet/csv.hpp"
#include "nprophet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <limits>
#include <ostream>

namespace nprophet {

namespace {
constexpr double kNull = std::numeric_limits<double>::quiet_NaN();
}

bool ForecastFrame::has_column(std::string_view name) const
{
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

const std::vector<double>& ForecastFrame::column(std::string_view name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw ParseError(fmt::format("missing column '{}'", name));
    }
    return values[static_cast<std::size_t>(it - columns.begin())];
}

std::vector<double>& ForecastFrame::add_column(std::string name)
{
    columns.push_back(std::move(name));
    values.emplace_back(ds.size(), kNull);
    return values.back();
}

ForecastFrame predict(const FittedModel& fitted, const Dataset& data, const PredictOptions& options)
{
    const Model& model = fitted.model;
    const ModelSpec& spec = model.spec;
    const DataTransform& tf = fitted.transform;
    const PreparedData prepared = prepare(data, spec, tf);
    for (std::size_t f = 0; f < spec.future_regressors.size(); ++f) {
        for (std::size_t r = 0; r < prepared.rows(); ++r) {
            if (std::isnan(prepared.future[f][r])) {
                throw MissingRegressor(fmt::format("future regressor '{}' is missing at {}",
                                                   spec.future_regressors[f].name, format_timestamp(data.ds[r])));
            }
        }
    }
    const SampleSet set = tabularize(prepared, spec, tf.time, SampleMode::Prediction);
    const std::size_t h = spec.n_forecasts;
    const std::size_t n = data.size();
    const double scale = tf.y.scale;

    ForecastFrame frame;
    frame.ds = data.ds;
    frame.add_column("y") = data.y;

    const auto yhat = predict_samples(model, set, options.exec);
    const std::size_t first_age = frame.columns.size();
    for (std::size_t i = 1; i <= h; ++i) {
        frame.add_column(fmt::format("yhat{}", i));
    }
    for (std::size_t s = 0; s < set.size(); ++s) {
        for (std::size_t i = 0; i < h; ++i) {
            frame.values[first_age + i][set.row(s, i)] = tf.y.invert(yhat[s * h + i]);
        }
    }
    if (!options.decompose) {
        return frame;
    }

    std::vector<TimeComponents> time(n);
#pragma omp parallel for schedule(static) if (options.exec == Exec::Parallel)
    for (std::size_t r = 0; r < n; ++r) {
        time[r] = time_components(model, set.features, r);
    }
    auto& trend = frame.add_column("trend");
    for (std::size_t r = 0; r < n; ++r) {
        trend[r] = tf.y.invert(time[r].trend);
    }
    for (std::size_t k = 0; k < spec.seasonalities.size(); ++k) {
        auto& col = frame.add_column("season_" + spec.seasonalities[k].name);
        for (std::size_t r = 0; r < n; ++r) {
            col[r] = scale * time[r].seasonality[k];
        }
    }
    const auto event_names = spec.event_names();
    for (std::size_t e = 0; e < event_names.size(); ++e) {
        auto& col = frame.add_column("event_" + event_names[e]);
        for (std::size_t r = 0; r < n; ++r) {
            col[r] = scale * time[r].events[e];
        }
    }
    for (std::size_t f = 0; f < spec.future_regressors.size(); ++f) {
        auto& col = frame.add_column("future_" + spec.future_regressors[f].name);
        for (std::size_t r = 0; r < n; ++r) {
            col[r] = scale * time[r].future[f];
        }
    }

    if (!spec.uses_lags()) {
        return frame;
    }
    std::vector<LagComponents> lags(set.size());
#pragma omp parallel for schedule(static) if (options.exec == Exec::Parallel)
    for (std::size_t s = 0; s < set.size(); ++s) {
        lags[s] = lag_components(model, set, s);
    }
    if (spec.has_ar()) {
        for (std::size_t i = 0; i < h; ++i) {
            auto& col = frame.add_column(fmt::format("ar{}", i + 1));
            for (std::size_t s = 0; s < set.size(); ++s) {
                col[set.row(s, i)] = scale * lags[s].ar[i];
            }
        }
    }
    for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
        for (std::size_t i = 0; i < h; ++i) {
            auto& col = frame.add_column(fmt::format("lagged_{}{}", spec.lagged[c].name, i + 1));
            for (std::size_t s = 0; s < set.size(); ++s) {
                col[set.row(s, i)] = scale * lags[s].lagged[c][i];
            }
        }
    }
    return frame;
}

void write_forecast(std::ostream& out, const ForecastFrame& frame)
{
    out << "ds";
    for (const auto& c : frame.columns) {
        out << ',' << c;
    }
    out << '\n';
    for (std::size_t r = 0; r < frame.rows(); ++r) {
        out << format_timestamp(frame.ds[r]);
        for (const auto& col : frame.values) {
            out << ',' << format_value(col[r]);
        }
        out << '\n';
    }
}

ForecastFrame read_forecast(std::istream& in)
{
    const CsvTable table = read_csv_table(in);
    const std::size_t ds_col = table.index_of("ds");
    ForecastFrame frame;
    for (const auto& row : table.rows) {
        frame.ds.push_back(parse_timestamp(row[ds_col]));
    }
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c == ds_col) {
            continue;
        }
        auto& col = frame.add_column(table.header[c]);
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            col[r] = parse_value(table.rows[r][c]);
        }
    }
    return frame;
}

void write_plot_data(std::ostream& out, const ForecastFrame& frame)
{
    out << "ds,component,value\n";
    for (std::size_t r = 0; r < frame.rows(); ++r) {
        const auto ts = format_timestamp(frame.ds[r]);
        for (std::size_t c = 0; c < frame.columns.size(); ++c) {
            const double v = frame.values[c][r];
            if (!std::isnan(v)) {
                out << ts << ',' << frame.columns[c] << ',' << format_value(v) << '\n';
            }
        }
    }
}

} // namespace nprophet
