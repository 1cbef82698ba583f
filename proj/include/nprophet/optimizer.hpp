#pragma once

#include "nprophet/config.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nprophet {

struct OptimizerSettings {
    double weight_decay = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double momentum = 0.9; // SGD only
};

/// AdamW (decoupled weight decay) or SGD with momentum, following the usual
/// torch update rules. Throws NonFiniteGradient before touching parameters.
class Optimizer {
public:
    Optimizer(OptimizerKind kind, std::size_t size, OptimizerSettings settings = {});

    void step(std::span<double> params, std::span<const double> grad, double lr);
    void reset();

    OptimizerKind kind() const { return kind_; }
    std::size_t steps() const { return steps_; }

private:
    OptimizerKind kind_;
    OptimizerSettings settings_;
    std::vector<double> m_;
    std::vector<double> v_;
    std::size_t steps_ = 0;
};

} // namespace nprophet
