#pragma once

#include <span>

namespace nprophet {

/// Mean absolute first difference of the training data (the in-sample
/// one-step naive error). Missing values break the difference chain.
double naive_mae(std::span<const double> train);
double naive_mse(std::span<const double> train);

/// Mean absolute error over all forecasts divided by naive_mae(train).
/// Throws ZeroDenominator for a constant training series.
double mase(std::span<const double> train, std::span<const double> actual, std::span<const double> forecast);

/// sqrt(mean squared error / naive_mse(train)).
double rmsse(std::span<const double> train, std::span<const double> actual, std::span<const double> forecast);

double rmse(std::span<const double> actual, std::span<const double> forecast);
double mae(std::span<const double> actual, std::span<const double> forecast);

} // namespace nprophet
