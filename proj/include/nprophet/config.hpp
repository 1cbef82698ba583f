#pragma once

#include "nprophet/component_mode.hpp"
#include "nprophet/events.hpp"
#include "nprophet/impute.hpp"
#include "nprophet/normalize.hpp"
#include "nprophet/penalty.hpp"
#include "nprophet/seasonality.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nprophet {

struct TrendConfig {
    bool enabled = true; // disabled leaves a single fitted offset
    std::size_t n_changepoints = 10;
    std::optional<std::vector<double>> changepoints; // normalized times; bypasses placement
    double changepoints_range = 0.85;
    double changepoint_reg = 0.0;
};

struct SeasonalityOptions {
    bool auto_enable = true;
    // explicit overrides of the automatic yearly/weekly/daily choice
    std::optional<bool> yearly;
    std::optional<bool> weekly;
    std::optional<bool> daily;
    ComponentMode mode = ComponentMode::Additive;
    double reg = 0.0;
    std::vector<Seasonality> custom;
};

/// An event either lists its dates or reads them from a 0/1 column.
struct EventConfig {
    Event event;
    std::string column;
};

struct HolidayConfig {
    std::string country;
    int lower_window = 0;
    int upper_window = 0;
    ComponentMode mode = ComponentMode::Additive;
    double reg = 0.0;
};

struct FutureRegressorConfig {
    std::string name;
    ComponentMode mode = ComponentMode::Additive;
    NormalizeMode normalize = NormalizeMode::Auto;
    double reg = 0.0;
};

struct ArConfig {
    std::size_t n_lags = 0;
    std::vector<std::size_t> hidden_layers;
    double sparsity = 0.0;
    PenaltyKind penalty = PenaltyKind::Default;
};

struct LaggedRegressorConfig {
    std::string name;
    ArConfig net;
    NormalizeMode normalize = NormalizeMode::Auto;
};

enum class LossKind { Huber, Mse, Mae };
enum class OptimizerKind { AdamW, Sgd };

LossKind parse_loss_kind(std::string_view name);
std::string to_string(LossKind kind);
OptimizerKind parse_optimizer_kind(std::string_view name);
std::string to_string(OptimizerKind kind);

struct TrainConfig {
    LossKind loss = LossKind::Huber;
    double huber_beta = 1.0;
    OptimizerKind optimizer = OptimizerKind::AdamW;
    std::optional<double> learning_rate;
    std::optional<std::size_t> batch_size;
    std::optional<std::size_t> epochs;
    double reg_ramp_start = 0.5;
    std::uint64_t seed = 0;
};

struct ModelConfig {
    std::size_t n_forecasts = 1;
    NormalizeMode normalize = NormalizeMode::Auto;
    bool impute = true;
    ImputeOptions impute_options;

    TrendConfig trend;
    SeasonalityOptions seasonality;
    std::vector<EventConfig> events;
    std::vector<HolidayConfig> holidays;
    std::vector<FutureRegressorConfig> future_regressors;
    ArConfig ar;
    std::vector<LaggedRegressorConfig> lagged_regressors;
    TrainConfig train;

    bool uses_lags() const;
    /// Throws ParseError for out-of-range values.
    void validate() const;
};

} // namespace nprophet
