#pragma once

#include "nprophet/kernels.hpp"
#include "nprophet/model.hpp"
#include "nprophet/pipeline.hpp"
#include "nprophet/tabularize.hpp"
#include "nprophet/time_series.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace nptest {

inline nprophet::Dataset daily(std::vector<double> y, const std::string& start = "2000-01-01")
{
    nprophet::Dataset d;
    d.frequency = std::chrono::days{1};
    const auto t0 = nprophet::parse_timestamp(start);
    for (std::size_t t = 0; t < y.size(); ++t) {
        d.ds.push_back(t0 + std::chrono::days{static_cast<long>(t)});
    }
    d.y = std::move(y);
    return d;
}

struct Prepared {
    nprophet::ModelSpec spec;
    nprophet::DataTransform transform;
    nprophet::SampleSet set;
};

inline Prepared prepare_samples(const nprophet::ModelConfig& config, const nprophet::Dataset& data)
{
    Prepared p;
    p.spec = nprophet::resolve_spec(config, data);
    p.transform = nprophet::fit_transform(p.spec, config.normalize, data);
    const auto prepared = nprophet::prepare(data, p.spec, p.transform);
    p.set = nprophet::tabularize(prepared, p.spec, p.transform.time, nprophet::SampleMode::Training);
    return p;
}

inline void randomize(nprophet::Model& model, std::mt19937_64& rng, double scale = 0.5)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    for (auto& p : model.params) {
        p = u(rng);
    }
}

// Objective used by the gradient checks: mean batch loss plus the ramped
// regularization at full strength.
inline double objective(nprophet::BatchKernel& kernel, const nprophet::Model& model, const nprophet::SampleSet& set,
                        std::span<const std::size_t> batch, const nprophet::LossSettings& loss)
{
    return kernel.loss(model, set, batch, loss) + nprophet::regularization(model, 1.0, {});
}

// Largest relative error between the analytic gradient and central finite
// differences over all parameters. Gradients below `floor` in magnitude are
// compared against the floor instead.
inline double gradient_error(nprophet::Model model, const nprophet::SampleSet& set,
                             const nprophet::LossSettings& loss, double step = 1e-6, double floor = 1e-4)
{
    nprophet::BatchKernel kernel(model.spec, model.params.size(), nprophet::Exec::Serial);
    std::vector<std::size_t> batch(set.size());
    std::iota(batch.begin(), batch.end(), std::size_t{0});
    std::vector<double> grad(model.params.size());
    kernel.loss_grad(model, set, batch, loss, grad);
    nprophet::regularization(model, 1.0, grad);

    double worst = 0.0;
    for (std::size_t i = 0; i < model.params.size(); ++i) {
        const double keep = model.params[i];
        model.params[i] = keep + step;
        const double up = objective(kernel, model, set, batch, loss);
        model.params[i] = keep - step;
        const double down = objective(kernel, model, set, batch, loss);
        model.params[i] = keep;
        const double numeric = (up - down) / (2.0 * step);
        const double denom = std::max({std::abs(numeric), std::abs(grad[i]), floor});
        worst = std::max(worst, std::abs(numeric - grad[i]) / denom);
    }
    return worst;
}

} // namespace nptest
