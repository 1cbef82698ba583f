#pragma once

#include "nprophet/config.hpp"
#include "nprophet/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nprophet {

enum class Exec { Serial, Parallel };

struct LossSettings {
    LossKind kind = LossKind::Huber;
    double beta = 1.0;
};

/// Batch loss and gradient evaluation. Every sample's gradient lands in its
/// own buffer and buffers are summed in sample order, so the parallel path
/// reproduces the serial one bit for bit.
class BatchKernel {
public:
    BatchKernel(const ModelSpec& spec, std::size_t param_count, Exec exec);

    /// Mean loss over the batch samples and all h steps. `grad` is
    /// overwritten with its gradient.
    double loss_grad(const Model& model, const SampleSet& set, std::span<const std::size_t> batch,
                     const LossSettings& loss, std::span<double> grad);

    /// Mean loss without gradient.
    double loss(const Model& model, const SampleSet& set, std::span<const std::size_t> batch,
                const LossSettings& loss);

    Exec exec() const { return exec_; }

private:
    Exec exec_;
    std::size_t param_count_;
    std::vector<SampleScratch> scratch_; // one per thread
    std::vector<double> buffers_;        // one gradient per batch sample
    std::vector<double> sample_loss_;
};

/// yhat for every sample, row-major (samples x h).
std::vector<double> predict_samples(const Model& model, const SampleSet& set, Exec exec = Exec::Parallel);

} // namespace nprophet
