#pragma once

#include "nprophet/config.hpp"
#include "nprophet/kernels.hpp"
#include "nprophet/model.hpp"
#include "nprophet/pipeline.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace nprophet {

struct EpochMetrics {
    std::size_t epoch = 0;
    double loss = 0.0; // training objective in normalized units
    double rmse = 0.0; // original units
    double mae = 0.0;
};

/// Learned parameters together with everything needed to rebuild features
/// for new data.
struct FittedModel {
    Model model;
    DataTransform transform;
    LossSettings loss;
    double learning_rate = 0.0;
    std::size_t batch_size = 0;
    std::size_t epochs = 0;
    std::vector<EpochMetrics> history;
    std::string config_fingerprint;
};

struct FitOptions {
    Exec exec = Exec::Parallel;
    std::function<void(const EpochMetrics&)> on_epoch;
};

/// Mini-batch training with seeded shuffling, 1cycle learning rate and the
/// regularization ramp. Unset batch size, epochs and learning rate come from
/// the heuristics and the range test. Throws InsufficientData and
/// NonFiniteGradient.
FittedModel fit(const Dataset& train, const ModelConfig& config, const FitOptions& options = {});

/// Trains an already initialized model on prepared samples.
std::vector<EpochMetrics> train_model(Model& model, const SampleSet& set, const TrainConfig& train,
                                      const LossSettings& loss, double learning_rate, std::size_t batch_size,
                                      std::size_t epochs, double y_scale, const FitOptions& options = {});

} // namespace nprophet
