#pragma once

#include "fixtures.hpp"

#include "nprophet/config.hpp"

#include <array>
#include <cstdint>
#include <string_view>

namespace nptest {

enum class GradModule { Trend, Seasonality, Events, Regressors, LinearAr, DeepAr };

inline constexpr std::array kGradModules = {GradModule::Trend,      GradModule::Seasonality, GradModule::Events,
                                            GradModule::Regressors, GradModule::LinearAr,    GradModule::DeepAr};

inline std::string_view module_label(GradModule m)
{
    switch (m) {
    case GradModule::Trend: return "trend";
    case GradModule::Seasonality: return "seasonality";
    case GradModule::Events: return "events";
    case GradModule::Regressors: return "regressors";
    case GradModule::LinearAr: return "linear AR";
    case GradModule::DeepAr: return "deep AR 2x8";
    }
    return "?";
}

struct GradInstance {
    nprophet::Model model;
    nprophet::SampleSet set;
    nprophet::LossSettings loss;
};

// A small random problem exercising one module (plus the always-present
// offset), with random parameters away from zero.
inline GradInstance grad_instance(GradModule module, std::uint64_t seed)
{
    using namespace nprophet;
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(module));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = 48;
    std::vector<double> y(n);
    double level = 0.0;
    for (auto& v : y) {
        level += 0.3 * gauss(rng);
        v = level;
    }
    Dataset data = daily(y);

    ModelConfig cfg;
    cfg.seasonality.auto_enable = false;
    cfg.trend.enabled = false;
    switch (module) {
    case GradModule::Trend:
        cfg.trend.enabled = true;
        cfg.trend.n_changepoints = 4;
        cfg.trend.changepoint_reg = 0.3;
        break;
    case GradModule::Seasonality:
        cfg.trend.enabled = true;
        cfg.trend.n_changepoints = 2;
        cfg.seasonality.custom.push_back({"weekly", 7.0, 3, ComponentMode::Additive, 0.2});
        cfg.seasonality.custom.push_back({"monthly", 30.0, 2, ComponentMode::Multiplicative, 0.0});
        break;
    case GradModule::Events: {
        cfg.trend.enabled = true;
        EventConfig a;
        a.event.name = "a";
        a.event.lower_window = -1;
        a.event.upper_window = 1;
        a.event.reg = 0.1;
        for (int d : {5, 17, 30}) {
            a.event.dates.push_back(std::chrono::floor<std::chrono::days>(data.ds[d]));
        }
        cfg.events.push_back(a);
        EventConfig b;
        b.event.name = "b";
        b.event.mode = ComponentMode::Multiplicative;
        b.column = "b";
        std::vector<double> ind(n, 0.0);
        ind[9] = ind[22] = ind[40] = 1.0;
        data.columns["b"] = ind;
        cfg.events.push_back(b);
        break;
    }
    case GradModule::Regressors: {
        cfg.trend.enabled = true;
        std::vector<double> f1(n), f2(n), x(n);
        for (std::size_t t = 0; t < n; ++t) {
            f1[t] = gauss(rng);
            f2[t] = gauss(rng);
            x[t] = gauss(rng);
        }
        data.columns["f1"] = f1;
        data.columns["f2"] = f2;
        data.columns["x"] = x;
        cfg.future_regressors.push_back({"f1", ComponentMode::Additive, NormalizeMode::Auto, 0.2});
        cfg.future_regressors.push_back({"f2", ComponentMode::Multiplicative, NormalizeMode::Auto, 0.0});
        LaggedRegressorConfig lag;
        lag.name = "x";
        lag.net.n_lags = 3;
        lag.net.sparsity = 0.1;
        cfg.lagged_regressors.push_back(lag);
        cfg.n_forecasts = 2;
        break;
    }
    case GradModule::LinearAr:
        cfg.ar.n_lags = 5;
        cfg.ar.sparsity = 0.1;
        cfg.n_forecasts = 3;
        break;
    case GradModule::DeepAr:
        cfg.ar.n_lags = 5;
        cfg.ar.hidden_layers = {8, 8};
        cfg.ar.sparsity = 0.1;
        cfg.ar.penalty = seed % 2 == 0 ? PenaltyKind::Default : PenaltyKind::ArNet;
        cfg.n_forecasts = 2;
        break;
    }

    auto prepared = prepare_samples(cfg, data);
    GradInstance inst{Model::create(prepared.spec, seed), std::move(prepared.set), {}};
    randomize(inst.model, rng);
    inst.loss.kind = seed % 2 == 0 ? LossKind::Huber : LossKind::Mse;
    inst.loss.beta = 0.5;
    return inst;
}

} // namespace nptest
