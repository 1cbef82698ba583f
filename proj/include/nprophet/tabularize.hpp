#pragma once

#include "nprophet/model_spec.hpp"
#include "nprophet/time_series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nprophet {

/// Affine map of the training range onto [0, 1]; later instants exceed 1.
struct TimeRange {
    Timestamp start{};
    double span_seconds = 1.0;

    static TimeRange fit(std::span<const Timestamp> training);
    double normalize(Timestamp ts) const
    {
        return static_cast<double>((ts - start).count()) / span_seconds;
    }
};

/// Preprocessed (imputed, normalized) columns on a regular row grid.
struct PreparedData {
    std::vector<Timestamp> ds;
    std::vector<double> y;
    std::vector<std::vector<double>> future;           // one per spec.future_regressors
    std::vector<std::vector<double>> covariates;       // one per spec.lagged
    std::vector<std::vector<double>> event_indicators; // one per spec.events; empty for date lists

    std::size_t rows() const { return ds.size(); }
};

/// Per-row time features shared by every sample that touches the row.
struct FeatureTable {
    std::size_t rows = 0;
    std::vector<double> time;
    std::vector<double> fourier;
    std::size_t fourier_width = 0;
    std::vector<double> events;
    std::size_t event_width = 0;
    std::vector<double> future;
    std::size_t future_width = 0;

    std::span<const double> fourier_row(std::size_t r) const
    {
        return std::span(fourier).subspan(r * fourier_width, fourier_width);
    }
    std::span<const double> event_row(std::size_t r) const
    {
        return std::span(events).subspan(r * event_width, event_width);
    }
    std::span<const double> future_row(std::size_t r) const
    {
        return std::span(future).subspan(r * future_width, future_width);
    }
};

/// Concrete events (holidays expanded, indicator columns turned into dates)
/// covering the calendar years of `ds`.
std::vector<Event> resolve_events(const ModelSpec& spec, const PreparedData& data);

FeatureTable build_features(const PreparedData& data, const ModelSpec& spec, const TimeRange& range);

enum class SampleMode {
    Training,  // lags and all h targets observed
    Prediction // lags observed; targets may be unknown
};

/// One sample per forecast origin t: lags (x_{t-1}, ..., x_{t-p}) and the
/// targets at rows t .. t+h-1. Time features are looked up per target row.
struct SampleSet {
    FeatureTable features;
    std::size_t n_forecasts = 1;
    std::size_t ar_lags_count = 0;
    std::vector<std::size_t> origins;
    std::vector<double> targets;
    std::vector<double> ar_lags;
    std::vector<std::size_t> covariate_widths;
    std::vector<std::vector<double>> covariate_lags;

    std::size_t size() const { return origins.size(); }
    std::size_t row(std::size_t sample, std::size_t step) const { return origins[sample] + step; }
    std::span<const double> target(std::size_t s) const
    {
        return std::span(targets).subspan(s * n_forecasts, n_forecasts);
    }
    std::span<const double> ar_input(std::size_t s) const
    {
        return std::span(ar_lags).subspan(s * ar_lags_count, ar_lags_count);
    }
    std::span<const double> covariate_input(std::size_t c, std::size_t s) const
    {
        return std::span(covariate_lags[c]).subspan(s * covariate_widths[c], covariate_widths[c]);
    }
};

/// Throws InsufficientData when the rows cannot hold a single lag plus target
/// window, or when Training mode yields no complete sample.
SampleSet tabularize(const PreparedData& data, const ModelSpec& spec, const TimeRange& range,
                     SampleMode mode);

/// Keeps the samples whose positions are listed in `keep`.
SampleSet select_samples(const SampleSet& set, std::span<const std::size_t> keep);

} // namespace nprophet
