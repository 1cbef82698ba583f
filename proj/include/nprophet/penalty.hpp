#pragma once

#include <span>
#include <string>
#include <string_view>

namespace nprophet {

/// Mean of log(1 / (eps * e) + alpha * |theta_i|) + log(eps) + 1. Zero at
/// theta = 0 for every eps, alpha > 0.
double log_penalty(std::span<const double> theta, double epsilon = 1.0, double alpha = 1.0);

/// Adds scale * d(log_penalty)/d(theta) into `grad`. The subgradient at 0 is 0.
void log_penalty_grad(std::span<const double> theta, double epsilon, double alpha, double scale,
                      std::span<double> grad);

/// Default sparsity penalty for auto-regression weights: log_penalty with eps = 3, alpha = 1.
inline double sparsity_penalty_default(std::span<const double> theta)
{
    return log_penalty(theta, 3.0, 1.0);
}

/// Mean of 2 / (1 + exp(-c1 * |theta_i|^(1 / c2))) - 1.
double arnet_penalty(std::span<const double> theta, double c1 = 3.0, double c2 = 3.0);
void arnet_penalty_grad(std::span<const double> theta, double c1, double c2, double scale,
                        std::span<double> grad);

enum class PenaltyKind { Default, ArNet };

PenaltyKind parse_penalty_kind(std::string_view name);
std::string to_string(PenaltyKind kind);

} // namespace nprophet
