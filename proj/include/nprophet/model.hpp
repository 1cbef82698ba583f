#pragma once

#include "nprophet/model_spec.hpp"
#include "nprophet/tabularize.hpp"
#include "nprophet/trend.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nprophet {

/// Structure, parameter layout and the flat parameter vector. Gradients use
/// the same layout as `params`.
struct Model {
    ModelSpec spec;
    ParamLayout layout;
    std::vector<double> params;

    /// Trend, seasonality, event and regressor weights start at zero; deep
    /// AR-Net layers are drawn from `seed`.
    static Model create(ModelSpec spec, std::uint64_t seed);

    TrendParams trend() const;
    double trend_at(double t) const;
    std::span<const double> seasonality_coefficients(std::size_t k) const;
    std::span<const double> event_weights(std::size_t e) const;
    double future_coefficient(std::size_t f) const { return params[layout.future[f]]; }
    std::span<const double> ar_weights() const;
    std::span<const double> lagged_weights(std::size_t c) const;
};

/// Per-sample buffers for the forward and backward passes.
struct SampleScratch {
    std::vector<double> trend;
    std::vector<double> mult;
    std::vector<double> ar_out;
    std::vector<double> ar_acts;
    std::vector<std::vector<double>> lag_out;
    std::vector<std::vector<double>> lag_acts;
    std::vector<double> net_scratch;
    std::vector<double> d_yhat;

    explicit SampleScratch(const ModelSpec& spec);
};

/// yhat for the h target rows of sample `s`.
void forward_sample(const Model& model, const SampleSet& set, std::size_t s, std::span<double> yhat,
                    SampleScratch& scratch);

/// Accumulates d(loss)/d(params) into `grad`. Must follow forward_sample on
/// the same sample and scratch.
void backward_sample(const Model& model, const SampleSet& set, std::size_t s,
                     std::span<const double> d_yhat, std::span<double> grad, SampleScratch& scratch);

/// Time-feature components of one row, multiplicative ones already scaled by
/// the trend. Events are summed over their window columns.
struct TimeComponents {
    double trend = 0.0;
    std::vector<double> seasonality;
    std::vector<double> events;
    std::vector<double> future;

    double total() const;
};

TimeComponents time_components(const Model& model, const FeatureTable& features, std::size_t row);

/// AR and per-covariate effects for the h steps of sample `s`.
struct LagComponents {
    std::vector<double> ar;
    std::vector<std::vector<double>> lagged;
};

LagComponents lag_components(const Model& model, const SampleSet& set, std::size_t s);

/// Weighted sum of every module's penalty with strengths multiplied by
/// `ramp`. When `grad` is non-empty the penalty gradient is added to it.
double regularization(const Model& model, double ramp, std::span<double> grad);

} // namespace nprophet
