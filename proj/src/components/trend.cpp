#include "nprophet/trend.hpp"

#include "nprophet/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace nprophet {

std::vector<double> TrendParams::offsets() const
{
    std::vector<double> rho(delta.size());
    for (std::size_t j = 0; j < delta.size(); ++j) {
        rho[j] = -changepoints[j] * delta[j];
    }
    return rho;
}

double trend_eval(double t, double delta0, double rho0, std::span<const double> changepoints,
                  std::span<const double> delta)
{
    double rate = delta0;
    double offset = rho0;
    for (std::size_t j = 0; j < changepoints.size(); ++j) {
        if (t >= changepoints[j]) {
            rate += delta[j];
            offset -= changepoints[j] * delta[j];
        }
    }
    return rate * t + offset;
}

double trend_rate(double t, const TrendParams& p)
{
    double rate = p.delta0;
    for (std::size_t j = 0; j < p.changepoints.size(); ++j) {
        if (t >= p.changepoints[j]) {
            rate += p.delta[j];
        }
    }
    return rate;
}

std::vector<double> init_changepoints(std::size_t count, double range)
{
    std::vector<double> points(count);
    for (std::size_t i = 0; i < count; ++i) {
        points[i] = static_cast<double>(i + 1) * range / static_cast<double>(count + 1);
    }
    return points;
}

std::vector<double> validate_changepoints(std::vector<double> changepoints)
{
    for (double c : changepoints) {
        if (!(c > 0.0 && c < 1.0)) {
            throw InvalidChangepoint(
                fmt::format("changepoint {} lies outside the training range (0, 1)", c));
        }
    }
    std::sort(changepoints.begin(), changepoints.end());
    return changepoints;
}

} // namespace nprophet
