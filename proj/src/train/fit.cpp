#include "nprophet/fit.hpp"

#include "nprophet/errors.hpp"
#include "nprophet/heuristics.hpp"
#include "nprophet/lr_finder.hpp"
#include "nprophet/optimizer.hpp"
#include "nprophet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <spdlog/spdlog.h>

namespace nprophet {

std::vector<EpochMetrics> train_model(Model& model, const SampleSet& set, const TrainConfig& train,
                                      const LossSettings& loss, double learning_rate, std::size_t batch_size,
                                      std::size_t epochs, double y_scale, const FitOptions& options)
{
    const std::size_t n = set.size();
    if (n == 0) {
        throw InsufficientData("no training samples");
    }
    batch_size = std::clamp<std::size_t>(batch_size, 1, n);
    const std::size_t steps_per_epoch = (n + batch_size - 1) / batch_size;
    const std::size_t total_steps = steps_per_epoch * epochs;
    const double last_step = static_cast<double>(std::max<std::size_t>(total_steps, 2) - 1);

    Optimizer opt(train.optimizer, model.params.size());
    BatchKernel kernel(model.spec, model.params.size(), options.exec);
    std::vector<double> grad(model.params.size());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(train.seed);

    std::vector<EpochMetrics> history;
    history.reserve(epochs);
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        for (std::size_t begin = 0; begin < n; begin += batch_size) {
            const std::size_t count = std::min(batch_size, n - begin);
            std::span<const std::size_t> batch(order.data() + begin, count);
            const double progress = static_cast<double>(step) / last_step;
            const double lr = one_cycle_lr(progress, learning_rate);
            const double ramp = reg_schedule(progress, 1.0, train.reg_ramp_start);

            double value = kernel.loss_grad(model, set, batch, loss, grad);
            value += regularization(model, ramp, grad);
            opt.step(model.params, grad, lr);
            epoch_loss += value * static_cast<double>(count);
            ++step;
        }

        EpochMetrics m;
        m.epoch = epoch + 1;
        m.loss = epoch_loss / static_cast<double>(n);
        const auto yhat = predict_samples(model, set, options.exec);
        double se = 0.0;
        double ae = 0.0;
        for (std::size_t i = 0; i < yhat.size(); ++i) {
            const double r = (set.targets[i] - yhat[i]) * y_scale;
            se += r * r;
            ae += std::abs(r);
        }
        m.rmse = std::sqrt(se / static_cast<double>(yhat.size()));
        m.mae = ae / static_cast<double>(yhat.size());
        history.push_back(m);
        if (options.on_epoch) {
            options.on_epoch(m);
        }
    }
    return history;
}

FittedModel fit(const Dataset& train, const ModelConfig& config, const FitOptions& options)
{
    FittedModel fitted;
    ModelSpec spec = resolve_spec(config, train);
    fitted.transform = fit_transform(spec, config.normalize, train);
    const PreparedData prepared = prepare(train, spec, fitted.transform);
    const SampleSet set = tabularize(prepared, spec, fitted.transform.time, SampleMode::Training);

    const auto& tc = config.train;
    fitted.loss = {tc.loss, tc.huber_beta};
    fitted.batch_size = tc.batch_size.value_or(batch_size_heuristic(set.size()));
    fitted.epochs = tc.epochs.value_or(epochs_heuristic(set.size()));
    if (tc.learning_rate) {
        fitted.learning_rate = *tc.learning_rate;
    } else {
        try {
            fitted.learning_rate = lr_range_test(spec, set, tc, fitted.batch_size, options.exec);
        } catch (const DivergedTest& e) {
            spdlog::warn("{}; falling back to learning rate 1e-3", e.what());
            fitted.learning_rate = 1e-3;
        }
    }
    spdlog::debug("training on {} samples: batch {}, epochs {}, lr {:.3g}", set.size(), fitted.batch_size,
                  fitted.epochs, fitted.learning_rate);

    fitted.model = Model::create(std::move(spec), tc.seed);
    fitted.history = train_model(fitted.model, set, tc, fitted.loss, fitted.learning_rate, fitted.batch_size,
                                 fitted.epochs, fitted.transform.y.scale, options);
    return fitted;
}

} // namespace nprophet
