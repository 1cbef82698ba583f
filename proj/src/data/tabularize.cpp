#include "nprophet/tabularize.hpp"

#include "nprophet/errors.hpp"
#include "nprophet/events.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace nprophet {

TimeRange TimeRange::fit(std::span<const Timestamp> training)
{
    if (training.empty()) {
        throw InsufficientData("empty training range");
    }
    TimeRange range;
    range.start = training.front();
    const auto span = (training.back() - training.front()).count();
    range.span_seconds = span > 0 ? static_cast<double>(span) : 1.0;
    return range;
}

std::vector<Event> resolve_events(const ModelSpec& spec, const PreparedData& data)
{
    std::vector<Event> events;
    for (std::size_t e = 0; e < spec.events.size(); ++e) {
        Event ev = spec.events[e].event;
        if (!spec.events[e].column.empty()) {
            ev.dates = dates_from_indicator(data.ds, data.event_indicators.at(e));
        }
        events.push_back(std::move(ev));
    }
    if (spec.holidays.empty()) {
        return events;
    }
    using namespace std::chrono;
    const int first_year = data.ds.empty() ? 2000 : static_cast<int>(year_month_day{floor<days>(data.ds.front())}.year()) - 1;
    const int last_year = data.ds.empty() ? 2000 : static_cast<int>(year_month_day{floor<days>(data.ds.back())}.year()) + 1;
    for (std::size_t h = 0; h < spec.holidays.size(); ++h) {
        const auto& cfg = spec.holidays[h];
        auto table = country_holidays(cfg.country, first_year, last_year);
        for (const auto& name : spec.holiday_names[h]) {
            auto it = std::find_if(table.begin(), table.end(), [&](const Event& e) { return e.name == name; });
            Event ev;
            ev.name = name;
            if (it != table.end()) {
                ev.dates = it->dates;
            }
            ev.lower_window = cfg.lower_window;
            ev.upper_window = cfg.upper_window;
            ev.mode = cfg.mode;
            ev.reg = cfg.reg;
            events.push_back(std::move(ev));
        }
    }
    return events;
}

FeatureTable build_features(const PreparedData& data, const ModelSpec& spec, const TimeRange& range)
{
    FeatureTable table;
    const std::size_t n = data.rows();
    table.rows = n;
    table.time.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        table.time[r] = range.normalize(data.ds[r]);
    }

    table.fourier_width = spec.fourier_width();
    table.fourier.assign(n * table.fourier_width, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double t_days = days_since_epoch(data.ds[r]);
        std::size_t off = 0;
        for (const auto& s : spec.seasonalities) {
            fourier_features(t_days, s.period_days, s.fourier_order,
                             std::span(table.fourier).subspan(r * table.fourier_width + off,
                                                              s.coefficient_count()));
            off += s.coefficient_count();
        }
    }

    const auto events = resolve_events(spec, data);
    const EventMatrix em = event_features(data.ds, events);
    table.event_width = em.cols();
    table.events = em.values;

    table.future_width = spec.future_regressors.size();
    table.future.assign(n * table.future_width, 0.0);
    for (std::size_t f = 0; f < table.future_width; ++f) {
        for (std::size_t r = 0; r < n; ++r) {
            table.future[r * table.future_width + f] = data.future[f][r];
        }
    }
    return table;
}

namespace {

bool window_observed(std::span<const double> values, std::size_t begin, std::size_t end)
{
    for (std::size_t i = begin; i < end; ++i) {
        if (std::isnan(values[i])) {
            return false;
        }
    }
    return true;
}

} // namespace

SampleSet tabularize(const PreparedData& data, const ModelSpec& spec, const TimeRange& range,
                     SampleMode mode)
{
    const std::size_t n = data.rows();
    const std::size_t h = spec.n_forecasts;
    const std::size_t p = spec.max_lags();
    if (n < p + h) {
        throw InsufficientData(
            fmt::format("{} rows cannot hold {} lags plus {} forecast steps", n, p, h));
    }

    SampleSet set;
    set.features = build_features(data, spec, range);
    set.n_forecasts = h;
    set.ar_lags_count = spec.ar.n_lags;
    for (const auto& l : spec.lagged) {
        set.covariate_widths.push_back(l.shape.n_lags);
    }
    set.covariate_lags.resize(spec.lagged.size());

    for (std::size_t t = p; t + h <= n; ++t) {
        if (spec.has_ar() && !window_observed(data.y, t - spec.ar.n_lags, t)) {
            continue;
        }
        bool covariates_ok = true;
        for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
            covariates_ok = covariates_ok &&
                            window_observed(data.covariates[c], t - spec.lagged[c].shape.n_lags, t);
        }
        if (!covariates_ok) {
            continue;
        }
        if (mode == SampleMode::Training) {
            if (!window_observed(data.y, t, t + h)) {
                continue;
            }
            bool future_ok = true;
            for (const auto& col : data.future) {
                future_ok = future_ok && window_observed(col, t, t + h);
            }
            if (!future_ok) {
                continue;
            }
        }
        set.origins.push_back(t);
        for (std::size_t i = 0; i < h; ++i) {
            set.targets.push_back(data.y[t + i]);
        }
        for (std::size_t k = 1; k <= spec.ar.n_lags; ++k) {
            set.ar_lags.push_back(data.y[t - k]);
        }
        for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
            for (std::size_t k = 1; k <= spec.lagged[c].shape.n_lags; ++k) {
                set.covariate_lags[c].push_back(data.covariates[c][t - k]);
            }
        }
    }
    if (mode == SampleMode::Training && set.origins.empty()) {
        throw InsufficientData("no complete training sample");
    }
    return set;
}

SampleSet select_samples(const SampleSet& set, std::span<const std::size_t> keep)
{
    SampleSet out;
    out.features = set.features;
    out.n_forecasts = set.n_forecasts;
    out.ar_lags_count = set.ar_lags_count;
    out.covariate_widths = set.covariate_widths;
    out.covariate_lags.resize(set.covariate_lags.size());
    for (auto s : keep) {
        out.origins.push_back(set.origins[s]);
        const auto tgt = set.target(s);
        out.targets.insert(out.targets.end(), tgt.begin(), tgt.end());
        const auto ar = set.ar_input(s);
        out.ar_lags.insert(out.ar_lags.end(), ar.begin(), ar.end());
        for (std::size_t c = 0; c < set.covariate_lags.size(); ++c) {
            const auto cov = set.covariate_input(c, s);
            out.covariate_lags[c].insert(out.covariate_lags[c].end(), cov.begin(), cov.end());
        }
    }
    return out;
}

} // namespace nprophet
