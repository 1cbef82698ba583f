#include "nprophet/lr_finder.hpp"

#include "nprophet/errors.hpp"
#include "nprophet/heuristics.hpp"
#include "nprophet/model.hpp"
#include "nprophet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <spdlog/spdlog.h>

namespace nprophet {

namespace {
constexpr std::size_t kEvalSamples = 512;
}

double lr_test_rate(const LrTestSettings& settings, std::size_t i)
{
    if (settings.iterations <= 1) {
        return settings.start_lr;
    }
    const double frac = static_cast<double>(i) / static_cast<double>(settings.iterations - 1);
    return settings.start_lr * std::pow(settings.end_lr / settings.start_lr, frac);
}

double suggest_lr(std::span<const double> lrs, std::span<const double> smoothed, const LrTestSettings& settings)
{
    const std::size_t n = std::min(lrs.size(), smoothed.size());
    std::size_t begin = settings.skip_start;
    std::size_t end = n > settings.skip_end ? n - settings.skip_end : 0;
    if (end < begin + 2) {
        // short (diverged early) sweep: use whatever was recorded
        begin = 0;
        end = n;
    }
    if (end < begin + 2) {
        throw DivergedTest("learning-rate range test recorded too few losses");
    }
    // np.gradient-style differences: one-sided at the ends, central inside
    auto at = [&](std::size_t i) { return smoothed[i]; };
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = end;
    for (std::size_t i = begin; i < end; ++i) {
        double g;
        if (i == begin) {
            g = at(i + 1) - at(i);
        } else if (i + 1 == end) {
            g = at(i) - at(i - 1);
        } else {
            g = 0.5 * (at(i + 1) - at(i - 1));
        }
        if (std::isfinite(g) && g < best) {
            best = g;
            best_i = i;
        }
    }
    if (best_i == end) {
        throw DivergedTest("learning-rate range test produced no finite loss gradient");
    }
    return lrs[best_i];
}

LrTestRun lr_range_run(const LrTestSettings& settings, const std::function<double(double)>& step)
{
    LrTestRun run;
    double window_sum = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < settings.iterations; ++i) {
        const double lr = lr_test_rate(settings, i);
        double loss;
        try {
            loss = step(lr);
        } catch (const NonFiniteGradient&) {
            break;
        }
        if (!std::isfinite(loss)) {
            break;
        }
        run.lrs.push_back(lr);
        run.losses.push_back(loss);
        window_sum += loss;
        if (run.losses.size() > settings.smoothing) {
            window_sum -= run.losses[run.losses.size() - 1 - settings.smoothing];
        }
        const double width = static_cast<double>(std::min(run.losses.size(), settings.smoothing));
        const double avg = window_sum / width;
        run.smoothed.push_back(avg);
        best = std::min(best, avg);
        if (avg > settings.divergence_factor * best && i >= settings.skip_start) {
            break;
        }
    }
    if (run.losses.empty()) {
        throw DivergedTest("every loss in the learning-rate range test was non-finite");
    }
    run.suggestion = suggest_lr(run.lrs, run.smoothed, settings);
    return run;
}

double log10_mean(std::span<const double> values)
{
    double sum = 0.0;
    for (double v : values) {
        sum += std::log10(v);
    }
    return std::pow(10.0, sum / static_cast<double>(values.size()));
}

double lr_range_test(const ModelSpec& spec, const SampleSet& set, const TrainConfig& train,
                     std::size_t batch_size, Exec exec, std::size_t runs)
{
    LrTestSettings settings;
    settings.iterations = lr_test_iterations(set.size());
    const LossSettings loss{train.loss, train.huber_beta};
    batch_size = std::clamp<std::size_t>(batch_size, 1, set.size());

    std::vector<double> picks;
    for (std::size_t r = 0; r < runs; ++r) {
        Model model = Model::create(spec, train.seed + r);
        Optimizer opt(train.optimizer, model.params.size());
        BatchKernel kernel(spec, model.params.size(), exec);
        std::vector<double> grad(model.params.size());
        std::mt19937_64 rng(train.seed * 7919 + r + 1);
        std::vector<std::size_t> order(set.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t cursor = 0;
        // Losses are logged on a fixed evaluation subset after each step;
        // raw mini-batch losses differ batch to batch by more than the
        // learning-rate signal.
        const std::vector<std::size_t> eval(order.begin(),
                                            order.begin() + static_cast<std::ptrdiff_t>(std::min(kEvalSamples, order.size())));

        auto step = [&](double lr) {
            if (cursor + batch_size > order.size()) {
                std::shuffle(order.begin(), order.end(), rng);
                cursor = 0;
            }
            std::span<const std::size_t> batch(order.data() + cursor, batch_size);
            cursor += batch_size;
            const double l = kernel.loss_grad(model, set, batch, loss, grad);
            if (!std::isfinite(l)) {
                return l;
            }
            opt.step(model.params, grad, lr);
            return kernel.loss(model, set, eval, loss);
        };
        try {
            picks.push_back(lr_range_run(settings, step).suggestion);
        } catch (const DivergedTest& e) {
            spdlog::debug("learning-rate range test run {} failed: {}", r, e.what());
        }
    }
    if (picks.empty()) {
        throw DivergedTest("learning-rate range test diverged in every run");
    }
    return log10_mean(picks);
}

} // namespace nprophet
