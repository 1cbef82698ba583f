// Serial reference vs OpenMP kernels on a 6000-row synthetic series with
// every module enabled. Both paths produce bit-identical results.

#include "nprophet/kernels.hpp"
#include "nprophet/pipeline.hpp"
#include "nprophet/synth.hpp"

#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

#include <numeric>
#include <random>

using namespace nprophet;

namespace {

struct Problem {
    Model model;
    SampleSet set;
    std::vector<std::size_t> all;
};

const Problem& problem()
{
    static const Problem p = [] {
        spdlog::set_level(spdlog::level::warn);
        const auto s = compose_scenario(find_scenario("S-TSEFAL"), SynthOptions{}, 0);
        ModelConfig cfg;
        cfg.n_forecasts = 7;
        cfg.ar.n_lags = 30;
        cfg.ar.hidden_layers = {32, 32};
        LaggedRegressorConfig x;
        x.name = "x";
        x.net.n_lags = 30;
        cfg.lagged_regressors.push_back(x);
        cfg.future_regressors.push_back({"future"});
        EventConfig ev;
        ev.event.name = "event";
        ev.column = "event";
        cfg.events.push_back(ev);
        const auto spec = resolve_spec(cfg, s.data);
        const auto tf = fit_transform(spec, cfg.normalize, s.data);
        auto set = tabularize(prepare(s.data, spec, tf), spec, tf.time, SampleMode::Training);
        Problem out{Model::create(spec, 1), std::move(set), {}};
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(-0.1, 0.1);
        for (auto& v : out.model.params) {
            v += u(rng);
        }
        out.all.resize(out.set.size());
        std::iota(out.all.begin(), out.all.end(), std::size_t{0});
        return out;
    }();
    return p;
}

void loss_grad(benchmark::State& state, Exec exec)
{
    const auto& p = problem();
    const auto batch = static_cast<std::size_t>(state.range(0));
    BatchKernel kernel(p.model.spec, p.model.params.size(), exec);
    std::vector<double> grad(p.model.params.size());
    const std::span<const std::size_t> idx(p.all.data(), std::min(batch, p.all.size()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel.loss_grad(p.model, p.set, idx, {}, grad));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * idx.size()));
}

void predict(benchmark::State& state, Exec exec)
{
    const auto& p = problem();
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_samples(p.model, p.set, exec));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p.set.size()));
}

} // namespace

BENCHMARK_CAPTURE(loss_grad, serial, Exec::Serial)->Arg(32)->Arg(512)->Arg(6000)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(loss_grad, parallel, Exec::Parallel)->Arg(32)->Arg(512)->Arg(6000)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(predict, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(predict, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
