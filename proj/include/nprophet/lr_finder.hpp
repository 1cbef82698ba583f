#pragma once

#include "nprophet/config.hpp"
#include "nprophet/kernels.hpp"
#include "nprophet/model_spec.hpp"
#include "nprophet/tabularize.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nprophet {

struct LrTestSettings {
    std::size_t iterations = 100;
    double start_lr = 1e-7;
    double end_lr = 1e2;
    std::size_t skip_start = 10;
    std::size_t skip_end = 5;
    std::size_t smoothing = 5;
    // a run stops once the smoothed loss exceeds this multiple of its best
    double divergence_factor = 4.0;
};

struct LrTestRun {
    std::vector<double> lrs;
    std::vector<double> losses;   // raw, one per completed iteration
    std::vector<double> smoothed; // trailing moving average
    double suggestion = 0.0;
};

/// Learning rate of iteration i: start * (end / start)^(i / (n - 1)).
double lr_test_rate(const LrTestSettings& settings, std::size_t i);

/// Steepest-descent pick on the smoothed curve, ignoring the first
/// `skip_start` and last `skip_end` points. Throws DivergedTest when fewer
/// than two finite points remain.
double suggest_lr(std::span<const double> lrs, std::span<const double> smoothed, const LrTestSettings& settings);

/// One sweep. `step(lr)` performs one training step at `lr` and returns the
/// loss to log for it.
LrTestRun lr_range_run(const LrTestSettings& settings, const std::function<double(double)>& step);

/// 10^(mean(log10 x)).
double log10_mean(std::span<const double> values);

/// Three sweeps on freshly initialized models (seeds seed, seed+1, seed+2),
/// combined by log10-mean. Each step trains on one mini-batch and logs the
/// loss on a fixed subset of up to 512 samples. Runs that diverge outright are dropped; when all
/// do, throws DivergedTest.
double lr_range_test(const ModelSpec& spec, const SampleSet& set, const TrainConfig& train,
                     std::size_t batch_size, Exec exec = Exec::Parallel, std::size_t runs = 3);

} // namespace nprophet
