#include "nprophet/kernels.hpp"

#include "nprophet/loss.hpp"

#include <algorithm>
#include <omp.h>

namespace nprophet {

namespace {

std::size_t thread_slots(Exec exec)
{
    return exec == Exec::Parallel ? static_cast<std::size_t>(std::max(1, omp_get_max_threads())) : 1;
}

std::size_t thread_index(Exec exec)
{
    return exec == Exec::Parallel ? static_cast<std::size_t>(omp_get_thread_num()) : 0;
}

// Loss of one sample summed over its h steps; writes d(sum)/d(yhat) * norm.
double sample_loss(const Model& model, const SampleSet& set, std::size_t s, const LossSettings& loss,
                   double norm, SampleScratch& scratch, std::span<double> yhat, bool want_grad)
{
    forward_sample(model, set, s, yhat, scratch);
    const auto target = set.target(s);
    double sum = 0.0;
    for (std::size_t i = 0; i < set.n_forecasts; ++i) {
        sum += pointwise_loss(loss.kind, target[i], yhat[i], loss.beta);
        if (want_grad) {
            scratch.d_yhat[i] = pointwise_loss_grad(loss.kind, target[i], yhat[i], loss.beta) * norm;
        }
    }
    return sum;
}

} // namespace

BatchKernel::BatchKernel(const ModelSpec& spec, std::size_t param_count, Exec exec)
    : exec_(exec)
    , param_count_(param_count)
{
    scratch_.reserve(thread_slots(exec));
    for (std::size_t t = 0; t < thread_slots(exec); ++t) {
        scratch_.emplace_back(spec);
    }
}

double BatchKernel::loss_grad(const Model& model, const SampleSet& set, std::span<const std::size_t> batch,
                              const LossSettings& loss, std::span<double> grad)
{
    const std::size_t n = batch.size();
    const std::size_t h = set.n_forecasts;
    const std::size_t p = param_count_;
    const double norm = 1.0 / static_cast<double>(n * h);
    sample_loss_.assign(n, 0.0);

    if (exec_ == Exec::Serial) {
        // Reference path: one buffer, added into the total after each sample.
        buffers_.assign(p, 0.0);
        std::fill(grad.begin(), grad.end(), 0.0);
        std::vector<double> yhat(h);
        auto& scratch = scratch_[0];
        double total = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            std::fill(buffers_.begin(), buffers_.end(), 0.0);
            total += sample_loss(model, set, batch[b], loss, norm, scratch, yhat, true);
            backward_sample(model, set, batch[b], scratch.d_yhat, buffers_, scratch);
            for (std::size_t j = 0; j < p; ++j) {
                grad[j] += buffers_[j];
            }
        }
        return total * norm;
    }

    // Samples go through in fixed blocks; each block's per-sample gradients
    // are summed in sample order, so the result matches the serial path.
    constexpr std::size_t kBlock = 128;
    std::fill(grad.begin(), grad.end(), 0.0);
    buffers_.assign(std::min(n, kBlock) * p, 0.0);
#pragma omp parallel
    {
        auto& scratch = scratch_[thread_index(exec_)];
        std::vector<double> yhat(h);
        for (std::size_t first = 0; first < n; first += kBlock) {
            const std::size_t count = std::min(kBlock, n - first);
#pragma omp for schedule(static)
            for (std::size_t b = 0; b < count; ++b) {
                std::span<double> buf(buffers_.data() + b * p, p);
                std::fill(buf.begin(), buf.end(), 0.0);
                sample_loss_[first + b] =
                    sample_loss(model, set, batch[first + b], loss, norm, scratch, yhat, true);
                backward_sample(model, set, batch[first + b], scratch.d_yhat, buf, scratch);
            }
#pragma omp for schedule(static)
            for (std::size_t j = 0; j < p; ++j) {
                double acc = grad[j];
                for (std::size_t b = 0; b < count; ++b) {
                    acc += buffers_[b * p + j];
                }
                grad[j] = acc;
            }
        }
    }
    double total = 0.0;
    for (double l : sample_loss_) {
        total += l;
    }
    return total * norm;
}

double BatchKernel::loss(const Model& model, const SampleSet& set, std::span<const std::size_t> batch,
                         const LossSettings& loss)
{
    const std::size_t n = batch.size();
    const std::size_t h = set.n_forecasts;
    const double norm = 1.0 / static_cast<double>(n * h);
    sample_loss_.assign(n, 0.0);
#pragma omp parallel if (exec_ == Exec::Parallel)
    {
        auto& scratch = scratch_[thread_index(exec_)];
        std::vector<double> yhat(h);
#pragma omp for schedule(static)
        for (std::size_t b = 0; b < n; ++b) {
            sample_loss_[b] = sample_loss(model, set, batch[b], loss, norm, scratch, yhat, false);
        }
    }
    double total = 0.0;
    for (double l : sample_loss_) {
        total += l;
    }
    return total * norm;
}

std::vector<double> predict_samples(const Model& model, const SampleSet& set, Exec exec)
{
    const std::size_t n = set.size();
    const std::size_t h = set.n_forecasts;
    std::vector<double> out(n * h);
#pragma omp parallel if (exec == Exec::Parallel)
    {
        SampleScratch scratch(model.spec);
#pragma omp for schedule(static)
        for (std::size_t s = 0; s < n; ++s) {
            forward_sample(model, set, s, std::span(out).subspan(s * h, h), scratch);
        }
    }
    return out;
}

} // namespace nprophet
