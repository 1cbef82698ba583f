#pragma once

#include "nprophet/config.hpp"
#include "nprophet/model_spec.hpp"
#include "nprophet/normalize.hpp"
#include "nprophet/tabularize.hpp"
#include "nprophet/time_series.hpp"

#include <span>
#include <vector>

namespace nprophet {

/// Everything fitted on the training data that maps raw columns into model
/// space: value normalizations and the time axis.
struct DataTransform {
    NormalizationState y;
    std::vector<NormalizationState> future;     // per spec.future_regressors
    std::vector<NormalizationState> covariates; // per spec.lagged
    TimeRange time;
    Duration frequency{0};
};

/// Resolves automatic choices (changepoints, seasonalities, holiday names,
/// net shapes) against the training data. Throws ParseError when a
/// referenced column is absent.
ModelSpec resolve_spec(const ModelConfig& config, const Dataset& train);

DataTransform fit_transform(const ModelSpec& spec, NormalizeMode y_mode, const Dataset& train);

/// Fills gaps between the first and last observation; values outside that
/// range stay missing. A gap too long to fill leaves the series untouched
/// so that tabularization drops the affected samples.
std::vector<double> impute_observed_range(std::span<const double> values, const ImputeOptions& options);

/// Imputes and normalizes the columns the spec refers to. Throws
/// MissingRegressor when a regressor or event column is absent.
PreparedData prepare(const Dataset& data, const ModelSpec& spec, const DataTransform& transform);

} // namespace nprophet
