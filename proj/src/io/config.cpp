#include "nprophet/config.hpp"

#include "nprophet/errors.hpp"

#include <fmt/format.h>

namespace nprophet {

LossKind parse_loss_kind(std::string_view name)
{
    if (name == "huber") return LossKind::Huber;
    if (name == "mse") return LossKind::Mse;
    if (name == "mae") return LossKind::Mae;
    throw ParseError(fmt::format("unknown loss '{}'", name));
}

std::string to_string(LossKind kind)
{
    switch (kind) {
    case LossKind::Huber: return "huber";
    case LossKind::Mse: return "mse";
    case LossKind::Mae: return "mae";
    }
    return "huber";
}

OptimizerKind parse_optimizer_kind(std::string_view name)
{
    if (name == "adamw") return OptimizerKind::AdamW;
    if (name == "sgd") return OptimizerKind::Sgd;
    throw ParseError(fmt::format("unknown optimizer '{}'", name));
}

std::string to_string(OptimizerKind kind)
{
    return kind == OptimizerKind::AdamW ? "adamw" : "sgd";
}

bool ModelConfig::uses_lags() const
{
    if (ar.n_lags > 0) {
        return true;
    }
    for (const auto& l : lagged_regressors) {
        if (l.net.n_lags > 0) {
            return true;
        }
    }
    return false;
}

void ModelConfig::validate() const
{
    if (n_forecasts == 0) {
        throw ParseError("n_forecasts must be positive");
    }
    if (!(trend.changepoints_range > 0.0 && trend.changepoints_range <= 1.0)) {
        throw ParseError("changepoints_range must lie in (0, 1]");
    }
    if (train.huber_beta <= 0.0) {
        throw ParseError("huber_beta must be positive");
    }
    if (train.reg_ramp_start < 0.0 || train.reg_ramp_start > 1.0) {
        throw ParseError("reg_ramp_start must lie in [0, 1]");
    }
    if (train.learning_rate && *train.learning_rate <= 0.0) {
        throw ParseError("learning_rate must be positive");
    }
    if (train.batch_size && *train.batch_size == 0) {
        throw ParseError("batch_size must be positive");
    }
    if (train.epochs && *train.epochs == 0) {
        throw ParseError("epochs must be positive");
    }
    for (const auto& s : seasonality.custom) {
        if (s.period_days <= 0.0 || s.fourier_order == 0) {
            throw ParseError(fmt::format("seasonality '{}' needs a positive period and order", s.name));
        }
    }
    for (const auto& l : lagged_regressors) {
        if (l.net.n_lags == 0) {
            throw ParseError(fmt::format("lagged regressor '{}' needs n_lags >= 1", l.name));
        }
    }
    auto check_reg = [](double v, std::string_view what) {
        if (v < 0.0) {
            throw ParseError(fmt::format("{} must be non-negative", what));
        }
    };
    for (const auto& e : events) {
        if (e.event.lower_window > 0 || e.event.upper_window < 0) {
            throw ParseError(fmt::format("event '{}' window must satisfy lower <= 0 <= upper", e.event.name));
        }
    }
    for (const auto& h : holidays) {
        if (h.lower_window > 0 || h.upper_window < 0) {
            throw ParseError("holiday window must satisfy lower <= 0 <= upper");
        }
    }
    check_reg(trend.changepoint_reg, "changepoint_reg");
    check_reg(ar.sparsity, "ar sparsity");
}

} // namespace nprophet
