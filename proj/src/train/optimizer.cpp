#include "nprophet/optimizer.hpp"

#include "nprophet/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace nprophet {

Optimizer::Optimizer(OptimizerKind kind, std::size_t size, OptimizerSettings settings)
    : kind_(kind)
    , settings_(settings)
    , m_(size, 0.0)
    , v_(kind == OptimizerKind::AdamW ? size : 0, 0.0)
{
}

void Optimizer::reset()
{
    std::fill(m_.begin(), m_.end(), 0.0);
    std::fill(v_.begin(), v_.end(), 0.0);
    steps_ = 0;
}

void Optimizer::step(std::span<double> params, std::span<const double> grad, double lr)
{
    if (grad.size() != params.size() || params.size() != m_.size()) {
        throw ShapeMismatch(fmt::format("optimizer sized for {} parameters, got {} / {}", m_.size(),
                                        params.size(), grad.size()));
    }
    for (std::size_t i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad[i])) {
            throw NonFiniteGradient(
                fmt::format("non-finite gradient {} at parameter {} (step {}, lr {:g})", grad[i], i, steps_ + 1, lr));
        }
    }
    ++steps_;
    const auto& s = settings_;

    if (kind_ == OptimizerKind::AdamW) {
        const double t = static_cast<double>(steps_);
        const double bias1 = 1.0 - std::pow(s.beta1, t);
        const double bias2 = 1.0 - std::pow(s.beta2, t);
        const double step_size = lr / bias1;
        const double bias2_sqrt = std::sqrt(bias2);
        const double decay = 1.0 - lr * s.weight_decay;
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] *= decay;
            m_[i] = s.beta1 * m_[i] + (1.0 - s.beta1) * grad[i];
            v_[i] = s.beta2 * v_[i] + (1.0 - s.beta2) * grad[i] * grad[i];
            const double denom = std::sqrt(v_[i]) / bias2_sqrt + s.eps;
            params[i] -= step_size * m_[i] / denom;
        }
        return;
    }

    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grad[i] + s.weight_decay * params[i];
        // the momentum buffer starts as the first gradient
        m_[i] = steps_ == 1 ? g : s.momentum * m_[i] + g;
        params[i] -= lr * m_[i];
    }
}

} // namespace nprophet
