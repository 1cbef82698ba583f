#include "nprophet/penalty.hpp"

#include "nprophet/errors.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace nprophet {

double log_penalty(std::span<const double> theta, double epsilon, double alpha)
{
    if (theta.empty()) {
        return 0.0;
    }
    const double offset = 1.0 / (epsilon * std::numbers::e);
    const double shift = std::log(epsilon) + 1.0;
    double sum = 0.0;
    for (double w : theta) {
        sum += std::log(offset + alpha * std::abs(w)) + shift;
    }
    return sum / static_cast<double>(theta.size());
}

void log_penalty_grad(std::span<const double> theta, double epsilon, double alpha, double scale,
                      std::span<double> grad)
{
    if (theta.empty()) {
        return;
    }
    const double offset = 1.0 / (epsilon * std::numbers::e);
    const double k = scale / static_cast<double>(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double w = theta[i];
        if (w == 0.0) {
            continue;
        }
        const double sign = w > 0.0 ? 1.0 : -1.0;
        grad[i] += k * alpha * sign / (offset + alpha * std::abs(w));
    }
}

double arnet_penalty(std::span<const double> theta, double c1, double c2)
{
    if (theta.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double w : theta) {
        sum += 2.0 / (1.0 + std::exp(-c1 * std::pow(std::abs(w), 1.0 / c2))) - 1.0;
    }
    return sum / static_cast<double>(theta.size());
}

void arnet_penalty_grad(std::span<const double> theta, double c1, double c2, double scale,
                        std::span<double> grad)
{
    if (theta.empty()) {
        return;
    }
    const double k = scale / static_cast<double>(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double w = theta[i];
        if (w == 0.0) {
            continue;
        }
        const double a = std::abs(w);
        const double u = c1 * std::pow(a, 1.0 / c2);
        const double s = 1.0 / (1.0 + std::exp(-u));
        const double du = c1 / c2 * std::pow(a, 1.0 / c2 - 1.0);
        const double sign = w > 0.0 ? 1.0 : -1.0;
        grad[i] += k * 2.0 * s * (1.0 - s) * du * sign;
    }
}

PenaltyKind parse_penalty_kind(std::string_view name)
{
    if (name == "default") return PenaltyKind::Default;
    if (name == "arnet") return PenaltyKind::ArNet;
    throw ParseError(fmt::format("unknown penalty '{}'", name));
}

std::string to_string(PenaltyKind kind)
{
    return kind == PenaltyKind::Default ? "default" : "arnet";
}

} // namespace nprophet
