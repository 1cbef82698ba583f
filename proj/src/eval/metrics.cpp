#include "nprophet/metrics.hpp"

#include "nprophet/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace nprophet {

namespace {

void check_lengths(std::span<const double> actual, std::span<const double> forecast)
{
    if (actual.size() != forecast.size()) {
        throw LengthMismatch(fmt::format("{} actuals vs {} forecasts", actual.size(), forecast.size()));
    }
}

template <class F>
double mean_diff(std::span<const double> train, F f)
{
    if (train.size() < 2) {
        throw InsufficientData("scaled metrics need at least two training values");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i < train.size(); ++i) {
        const double d = train[i] - train[i - 1];
        if (!std::isnan(d)) {
            sum += f(d);
            ++count;
        }
    }
    if (count == 0) {
        throw InsufficientData("no consecutive training observations");
    }
    return sum / static_cast<double>(count);
}

template <class F>
double mean_error(std::span<const double> actual, std::span<const double> forecast, F f)
{
    check_lengths(actual, forecast);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double r = actual[i] - forecast[i];
        if (!std::isnan(r)) {
            sum += f(r);
            ++count;
        }
    }
    if (count == 0) {
        throw InsufficientData("no forecast with a known actual");
    }
    return sum / static_cast<double>(count);
}

double abs_of(double x) { return std::abs(x); }
double square(double x) { return x * x; }

} // namespace

double naive_mae(std::span<const double> train)
{
    return mean_diff(train, abs_of);
}

double naive_mse(std::span<const double> train)
{
    return mean_diff(train, square);
}

double mase(std::span<const double> train, std::span<const double> actual, std::span<const double> forecast)
{
    const double denom = naive_mae(train);
    if (denom == 0.0) {
        throw ZeroDenominator("MASE undefined: training series is constant");
    }
    return mean_error(actual, forecast, abs_of) / denom;
}

double rmsse(std::span<const double> train, std::span<const double> actual, std::span<const double> forecast)
{
    const double denom = naive_mse(train);
    if (denom == 0.0) {
        throw ZeroDenominator("RMSSE undefined: training series is constant");
    }
    return std::sqrt(mean_error(actual, forecast, square) / denom);
}

double rmse(std::span<const double> actual, std::span<const double> forecast)
{
    return std::sqrt(mean_error(actual, forecast, square));
}

double mae(std::span<const double> actual, std::span<const double> forecast)
{
    return mean_error(actual, forecast, abs_of);
}

} // namespace nprophet
