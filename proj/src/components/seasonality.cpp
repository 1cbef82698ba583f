#include "nprophet/seasonality.hpp"

#include "nprophet/errors.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace nprophet {

ComponentMode parse_component_mode(std::string_view name)
{
    if (name == "additive") return ComponentMode::Additive;
    if (name == "multiplicative") return ComponentMode::Multiplicative;
    throw ParseError(fmt::format("unknown component mode '{}'", name));
}

std::string to_string(ComponentMode mode)
{
    return mode == ComponentMode::Additive ? "additive" : "multiplicative";
}

void fourier_features(double t_days, double period_days, std::size_t order, std::span<double> out)
{
    // reduce to one period first so that S(t + p) == S(t) holds tightly
    const double phase = std::fmod(t_days, period_days) / period_days;
    for (std::size_t j = 1; j <= order; ++j) {
        const double arg = 2.0 * std::numbers::pi * static_cast<double>(j) * phase;
        out[2 * (j - 1)] = std::cos(arg);
        out[2 * (j - 1) + 1] = std::sin(arg);
    }
}

double seasonal_effect(double t_days, double period_days, std::span<const double> coefficients)
{
    const std::size_t order = coefficients.size() / 2;
    const double phase = std::fmod(t_days, period_days) / period_days;
    double sum = 0.0;
    for (std::size_t j = 1; j <= order; ++j) {
        const double arg = 2.0 * std::numbers::pi * static_cast<double>(j) * phase;
        sum += coefficients[2 * (j - 1)] * std::cos(arg) + coefficients[2 * (j - 1) + 1] * std::sin(arg);
    }
    return sum;
}

std::vector<double> seasonality_eval(double t_days, std::span<const Seasonality> seasonalities,
                                     std::span<const std::vector<double>> coefficients)
{
    if (seasonalities.size() != coefficients.size()) {
        throw ShapeMismatch("one coefficient vector per seasonality is required");
    }
    std::vector<double> out(seasonalities.size());
    for (std::size_t s = 0; s < seasonalities.size(); ++s) {
        if (coefficients[s].size() != seasonalities[s].coefficient_count()) {
            throw ShapeMismatch(fmt::format("seasonality '{}' expects {} coefficients",
                                            seasonalities[s].name, seasonalities[s].coefficient_count()));
        }
        out[s] = seasonal_effect(t_days, seasonalities[s].period_days, coefficients[s]);
    }
    return out;
}

std::vector<Seasonality> auto_configure_seasonality(Duration frequency, Duration span)
{
    struct Candidate {
        const char* name;
        double period_days;
        std::size_t order;
    };
    constexpr Candidate candidates[] = {
        {"yearly", 365.25, 6},
        {"weekly", 7.0, 3},
        {"daily", 1.0, 6},
    };
    const double freq_days = static_cast<double>(frequency.count()) / 86400.0;
    const double span_days = static_cast<double>(span.count()) / 86400.0;
    std::vector<Seasonality> out;
    for (const auto& c : candidates) {
        if (freq_days < c.period_days && span_days >= 2.0 * c.period_days) {
            out.push_back({c.name, c.period_days, c.order, ComponentMode::Additive, 0.0});
        }
    }
    return out;
}

} // namespace nprophet
