#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nprophet {

/// Continuous piecewise-linear trend on normalized time (training range
/// mapped to [0, 1]). Offsets at changepoints are derived as -c_j * delta_j.
struct TrendParams {
    double delta0 = 0.0; // initial growth rate
    double rho0 = 0.0;   // initial offset
    std::vector<double> changepoints;
    std::vector<double> delta;

    std::vector<double> offsets() const;
};

/// (delta0 + Gamma(t)'delta) * t + (rho0 + Gamma(t)'rho) with Gamma_j(t) = [t >= c_j].
double trend_eval(double t, double delta0, double rho0, std::span<const double> changepoints,
                  std::span<const double> delta);

inline double trend_eval(double t, const TrendParams& p)
{
    return trend_eval(t, p.delta0, p.rho0, p.changepoints, p.delta);
}

/// Growth rate in effect at t.
double trend_rate(double t, const TrendParams& p);

/// `count` equidistant interior points i * range / (count + 1), i = 1..count.
std::vector<double> init_changepoints(std::size_t count, double range = 0.85);

/// Sorts user supplied changepoints; throws InvalidChangepoint for any value
/// outside the open training interval (0, 1).
std::vector<double> validate_changepoints(std::vector<double> changepoints);

} // namespace nprophet
