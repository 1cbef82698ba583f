#include "nprophet/pipeline.hpp"

#include "nprophet/errors.hpp"
#include "nprophet/events.hpp"
#include "nprophet/impute.hpp"
#include "nprophet/trend.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>
#include <spdlog/spdlog.h>

namespace nprophet {

namespace {

ArNetShape shape_for(const ArConfig& cfg, std::size_t h)
{
    ArNetShape shape;
    shape.n_lags = cfg.n_lags;
    shape.n_outputs = h;
    shape.hidden = cfg.hidden_layers;
    return shape;
}

void require_column(const Dataset& data, const std::string& name, std::string_view role)
{
    if (!data.has_column(name)) {
        throw ParseError(fmt::format("missing column '{}' for {}", name, role));
    }
}

} // namespace

ModelSpec resolve_spec(const ModelConfig& config, const Dataset& train)
{
    config.validate();
    if (train.size() < 2) {
        throw InsufficientData("training data needs at least two rows");
    }
    ModelSpec spec;
    spec.n_forecasts = config.n_forecasts;
    spec.impute = config.impute;
    spec.impute_options = config.impute_options;

    spec.trend_enabled = config.trend.enabled;
    if (spec.trend_enabled) {
        spec.changepoints = config.trend.changepoints
                                ? validate_changepoints(*config.trend.changepoints)
                                : init_changepoints(config.trend.n_changepoints, config.trend.changepoints_range);
        spec.changepoint_reg = config.trend.changepoint_reg;
    }

    const auto& so = config.seasonality;
    const Duration frequency = train.frequency.count() > 0 ? train.frequency : infer_frequency(train.ds);
    const Duration span = (train.ds.back() - train.ds.front()) + frequency;
    const auto automatic = auto_configure_seasonality(frequency, span);
    auto pick = [&](const std::string& name, double period, std::size_t order, std::optional<bool> force) {
        const bool on_auto = so.auto_enable && std::any_of(automatic.begin(), automatic.end(),
                                                           [&](const Seasonality& s) { return s.name == name; });
        if (force.value_or(on_auto)) {
            spec.seasonalities.push_back({name, period, order, so.mode, so.reg});
        }
    };
    pick("yearly", 365.25, 6, so.yearly);
    pick("weekly", 7.0, 3, so.weekly);
    pick("daily", 1.0, 6, so.daily);
    std::set<std::string> seen;
    for (const auto& s : spec.seasonalities) {
        seen.insert(s.name);
    }
    for (const auto& s : so.custom) {
        if (seen.contains(s.name)) {
            // a custom section with a default name replaces the default
            std::erase_if(spec.seasonalities, [&](const Seasonality& x) { return x.name == s.name; });
        }
        spec.seasonalities.push_back(s);
    }

    spec.events = config.events;
    for (const auto& e : spec.events) {
        if (!e.column.empty()) {
            require_column(train, e.column, "event " + e.event.name);
        }
    }
    spec.holidays = config.holidays;
    if (!spec.holidays.empty()) {
        using namespace std::chrono;
        const int y0 = static_cast<int>(year_month_day{floor<days>(train.ds.front())}.year());
        const int y1 = static_cast<int>(year_month_day{floor<days>(train.ds.back())}.year());
        for (const auto& h : spec.holidays) {
            std::vector<std::string> names;
            for (const auto& ev : country_holidays(h.country, y0, y1)) {
                names.push_back(ev.name);
            }
            spec.holiday_names.push_back(std::move(names));
        }
    }

    spec.future_regressors = config.future_regressors;
    for (const auto& f : spec.future_regressors) {
        require_column(train, f.name, "future regressor");
    }

    spec.ar = shape_for(config.ar, spec.n_forecasts);
    spec.ar_sparsity = config.ar.sparsity;
    spec.ar_penalty = config.ar.penalty;
    for (const auto& l : config.lagged_regressors) {
        require_column(train, l.name, "lagged regressor");
        spec.lagged.push_back({l.name, shape_for(l.net, spec.n_forecasts), l.net.sparsity, l.net.penalty, l.normalize});
    }
    return spec;
}

DataTransform fit_transform(const ModelSpec& spec, NormalizeMode y_mode, const Dataset& train)
{
    DataTransform tf;
    tf.frequency = train.frequency.count() > 0 ? train.frequency : infer_frequency(train.ds);
    tf.time = TimeRange::fit(train.ds);
    tf.y = fit_normalization_or_off(train.y, y_mode, "y");
    for (const auto& f : spec.future_regressors) {
        tf.future.push_back(fit_normalization_or_off(train.column(f.name), f.normalize, f.name));
    }
    for (const auto& l : spec.lagged) {
        tf.covariates.push_back(fit_normalization_or_off(train.column(l.name), l.normalize, l.name));
    }
    return tf;
}

std::vector<double> impute_observed_range(std::span<const double> values, const ImputeOptions& options)
{
    std::vector<double> out(values.begin(), values.end());
    std::size_t first = 0;
    while (first < out.size() && std::isnan(out[first])) {
        ++first;
    }
    if (first == out.size()) {
        return out;
    }
    std::size_t last = out.size() - 1;
    while (std::isnan(out[last])) {
        --last;
    }
    auto result = impute_values(std::span(out).subspan(first, last - first + 1), options);
    if (const auto* filled = std::get_if<std::vector<double>>(&result)) {
        std::copy(filled->begin(), filled->end(), out.begin() + static_cast<std::ptrdiff_t>(first));
    } else {
        const auto& abort = std::get<ImputeAbort>(result);
        spdlog::warn("gap of {} missing values at row {}; dropping incomplete samples instead of imputing",
                     abort.gap_length, first + abort.gap_start);
    }
    return out;
}

PreparedData prepare(const Dataset& data, const ModelSpec& spec, const DataTransform& transform)
{
    PreparedData out;
    out.ds = data.ds;
    auto column = [&](const std::string& name) -> const std::vector<double>& {
        if (!data.has_column(name)) {
            throw MissingRegressor(fmt::format("missing column '{}'", name));
        }
        return data.column(name);
    };
    auto clean = [&](std::span<const double> raw, const NormalizationState& norm) {
        auto v = spec.impute ? impute_observed_range(raw, spec.impute_options)
                             : std::vector<double>(raw.begin(), raw.end());
        for (auto& x : v) {
            x = norm.apply(x);
        }
        return v;
    };

    out.y = clean(data.y, transform.y);
    for (std::size_t f = 0; f < spec.future_regressors.size(); ++f) {
        out.future.push_back(clean(column(spec.future_regressors[f].name), transform.future[f]));
    }
    for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
        out.covariates.push_back(clean(column(spec.lagged[c].name), transform.covariates[c]));
    }
    for (const auto& e : spec.events) {
        out.event_indicators.push_back(e.column.empty() ? std::vector<double>{} : impute_events(column(e.column)));
    }
    return out;
}

} // namespace nprophet
