#pragma once

#include "nprophet/config.hpp"

#include <cmath>

namespace nprophet {

/// Smooth L1: r^2 / (2 beta) below beta, |r| - beta / 2 above, r = y - yhat.
inline double huber_loss(double y, double yhat, double beta = 1.0)
{
    const double r = std::abs(y - yhat);
    return r < beta ? r * r / (2.0 * beta) : r - 0.5 * beta;
}

inline double pointwise_loss(LossKind kind, double y, double yhat, double beta)
{
    const double r = y - yhat;
    switch (kind) {
    case LossKind::Huber: return huber_loss(y, yhat, beta);
    case LossKind::Mse: return r * r;
    case LossKind::Mae: return std::abs(r);
    }
    return 0.0;
}

/// d(loss)/d(yhat).
inline double pointwise_loss_grad(LossKind kind, double y, double yhat, double beta)
{
    const double r = y - yhat;
    const double sign = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
    switch (kind) {
    case LossKind::Huber: return std::abs(r) < beta ? -r / beta : -sign;
    case LossKind::Mse: return -2.0 * r;
    case LossKind::Mae: return -sign;
    }
    return 0.0;
}

} // namespace nprophet
