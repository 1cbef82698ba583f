#pragma once

#include "nprophet/component_mode.hpp"
#include "nprophet/time_series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nprophet {

/// One Fourier seasonality. Period is in days; the time argument of every
/// seasonal function is days since the Unix epoch.
struct Seasonality {
    std::string name;
    double period_days = 7.0;
    std::size_t fourier_order = 3;
    ComponentMode mode = ComponentMode::Additive;
    double reg = 0.0;

    std::size_t coefficient_count() const { return 2 * fourier_order; }
};

/// Writes (cos(2 pi j t / p), sin(2 pi j t / p)) for j = 1..order, interleaved.
void fourier_features(double t_days, double period_days, std::size_t order, std::span<double> out);

/// S_p(t) = sum_j a_j cos(2 pi j t / p) + b_j sin(2 pi j t / p) with
/// `coefficients` laid out as (a_1, b_1, a_2, b_2, ...).
double seasonal_effect(double t_days, double period_days, std::span<const double> coefficients);

/// Per-periodicity effects S_p(t) at one instant.
std::vector<double> seasonality_eval(double t_days, std::span<const Seasonality> seasonalities,
                                     std::span<const std::vector<double>> coefficients);

/// Enables yearly (365.25 d, order 6), weekly (7 d, order 3) and daily
/// (1 d, order 6) seasonality when the sampling interval is finer than the
/// period and at least two full periods are covered by `span`.
std::vector<Seasonality> auto_configure_seasonality(Duration frequency, Duration span);

} // namespace nprophet
