#include "nprophet/normalize.hpp"

#include "nprophet/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace nprophet {

namespace {

std::vector<double> observed(std::span<const double> values)
{
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (!std::isnan(v)) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace

NormalizeMode parse_normalize_mode(std::string_view name)
{
    if (name == "auto") return NormalizeMode::Auto;
    if (name == "off") return NormalizeMode::Off;
    if (name == "minmax") return NormalizeMode::MinMax;
    if (name == "standardize") return NormalizeMode::Standardize;
    if (name == "soft") return NormalizeMode::Soft;
    if (name == "soft1") return NormalizeMode::Soft1;
    throw ParseError(fmt::format("unknown normalization '{}'", name));
}

std::string to_string(NormalizeMode mode)
{
    switch (mode) {
    case NormalizeMode::Auto: return "auto";
    case NormalizeMode::Off: return "off";
    case NormalizeMode::MinMax: return "minmax";
    case NormalizeMode::Standardize: return "standardize";
    case NormalizeMode::Soft: return "soft";
    case NormalizeMode::Soft1: return "soft1";
    }
    return "off";
}

std::vector<double> NormalizationState::apply(std::span<const double> xs) const
{
    std::vector<double> out(xs.size());
    std::transform(xs.begin(), xs.end(), out.begin(), [this](double x) { return apply(x); });
    return out;
}

std::vector<double> NormalizationState::invert(std::span<const double> zs) const
{
    std::vector<double> out(zs.size());
    std::transform(zs.begin(), zs.end(), out.begin(), [this](double z) { return invert(z); });
    return out;
}

double quantile(std::span<const double> values, double q)
{
    auto xs = observed(values);
    if (xs.empty()) {
        throw InsufficientData("quantile of an empty sample");
    }
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] + (xs[hi] - xs[lo]) * frac;
}

bool is_binary(std::span<const double> values)
{
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isnan(v) || v == 0.0 || v == 1.0; });
}

NormalizationState fit_normalization(std::span<const double> values, NormalizeMode mode)
{
    const auto xs = observed(values);
    if (xs.empty()) {
        throw InsufficientData("no observed values to normalize");
    }
    if (mode == NormalizeMode::Auto) {
        mode = is_binary(xs) ? NormalizeMode::MinMax : NormalizeMode::Soft;
    }
    NormalizationState state;
    state.mode = mode;
    const auto [min_it, max_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *min_it;
    switch (mode) {
    case NormalizeMode::Off:
        return state;
    case NormalizeMode::MinMax:
        state.shift = lo;
        state.scale = *max_it - lo;
        break;
    case NormalizeMode::Standardize: {
        double mean = 0.0;
        for (double x : xs) {
            mean += x;
        }
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) {
            var += (x - mean) * (x - mean);
        }
        state.shift = mean;
        state.scale = std::sqrt(var / static_cast<double>(xs.size()));
        break;
    }
    case NormalizeMode::Soft:
        state.shift = lo;
        state.scale = quantile(xs, 0.95) - lo;
        break;
    case NormalizeMode::Soft1: {
        // min -> 0.1 and q90 -> 0.9
        const double span = quantile(xs, 0.90) - lo;
        state.scale = span / 0.8;
        state.shift = lo - 0.1 * state.scale;
        break;
    }
    case NormalizeMode::Auto:
        break;
    }
    if (!(state.scale > 0.0) || !std::isfinite(state.scale)) {
        throw DegenerateScale(fmt::format("'{}' normalization has a zero scale", to_string(mode)));
    }
    return state;
}

NormalizationState fit_normalization_or_off(std::span<const double> values, NormalizeMode mode,
                                            std::string_view what)
{
    try {
        return fit_normalization(values, mode);
    } catch (const DegenerateScale& e) {
        spdlog::warn("{}: {}; normalization disabled", what, e.what());
        return NormalizationState{};
    }
}

} // namespace nprophet
