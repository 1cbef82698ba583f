#pragma once

#include "nprophet/component_mode.hpp"

#include <span>

namespace nprophet {

struct ComponentValue {
    double value = 0.0;
    ComponentMode mode = ComponentMode::Additive;
};

/// Contribution of one time-feature component: multiplicative ones are
/// scaled by the trend at the same timestamp.
inline double component_contribution(double trend, const ComponentValue& c)
{
    return c.mode == ComponentMode::Multiplicative ? trend * c.value : c.value;
}

/// yhat = T + sum of (possibly trend-scaled) seasonal, event and future
/// regressor effects + auto-regression + lagged regressor effects.
inline double compose_forecast(double trend, std::span<const ComponentValue> time_components,
                               double ar = 0.0, double lagged = 0.0)
{
    double yhat = trend;
    for (const auto& c : time_components) {
        yhat += component_contribution(trend, c);
    }
    return yhat + ar + lagged;
}

} // namespace nprophet
