// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "gradcheck.hpp"
#include "ols.hpp"

#include "nprophet/backtest.hpp"
#include "nprophet/fit.hpp"
#include "nprophet/forecast.hpp"
#include "nprophet/heuristics.hpp"
#include "nprophet/metrics.hpp"
#include "nprophet/normalize.hpp"
#include "nprophet/seasonality.hpp"
#include "nprophet/synth.hpp"
#include "nprophet/trend.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace nprophet;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
        }
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += what + (ok ? "" : " [!]");
    }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body)
{
    const auto t0 = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) {
        ++failures;
    }
    fmt::print("{} [{}] {} ({:.1f}s): {}\n", out.pass ? "PASS" : "FAIL", id, name, seconds_since(t0), out.detail);
    std::fflush(stdout);
}

ModelConfig sts_config()
{
    ModelConfig cfg;
    cfg.seasonality.auto_enable = false;
    cfg.seasonality.custom.push_back({"monthly", 30.0, 5});
    cfg.seasonality.custom.push_back({"yearly", 365.0, 5});
    return cfg;
}

ModelConfig lags_config()
{
    ModelConfig cfg;
    cfg.ar.n_lags = 30;
    LaggedRegressorConfig x;
    x.name = "x";
    x.net.n_lags = 30;
    cfg.lagged_regressors.push_back(x);
    return cfg;
}

Outcome gradient_suite()
{
    Outcome out;
    const auto t0 = Clock::now();
    for (auto m : nptest::kGradModules) {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto inst = nptest::grad_instance(m, 1000 + seed);
            worst = std::max(worst, nptest::gradient_error(inst.model, inst.set, inst.loss));
        }
        out.require(worst < 1e-4, fmt::format("{} max rel err {:.2e}", nptest::module_label(m), worst));
    }
    const double elapsed = seconds_since(t0);
    out.require(elapsed < 60.0, fmt::format("{:.1f}s < 60s", elapsed));
    return out;
}

Outcome heuristics()
{
    Outcome out;
    auto check = [&](const char* what, std::size_t got, std::size_t want) {
        out.require(got == want, fmt::format("{}={}", what, got));
    };
    check("batch(144)", batch_size_heuristic(144), 16);
    check("batch(6000)", batch_size_heuristic(6000), 32);
    check("batch(500000)", batch_size_heuristic(500000), 128);
    check("epochs(6000)", epochs_heuristic(6000), 116);
    check("epochs(1e6)", epochs_heuristic(1000000), 50);
    check("lr_iters(6000)", lr_test_iterations(6000), 289);
    return out;
}

// Fitted S-TS model kept for the prediction-speed check.
std::optional<std::pair<FittedModel, Dataset>> sts_model;

Outcome decomposition_oracle()
{
    Outcome out;
    const auto t0 = Clock::now();
    const double limit = 2.0 * 0.05;
    double worst_trend = 0.0, worst_monthly = 0.0;
    std::string per_seed;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SynthOptions opt;
        opt.seed = seed;
        const auto series = compose_scenario(find_scenario("S-TS"), opt, 0);
        auto fitted = fit(series.data, sts_config());
        const auto frame = predict(fitted, series.data, {true, Exec::Parallel});
        std::map<std::string, std::vector<double>> pred{{"trend", frame.column("trend")},
                                                        {"monthly", frame.column("season_monthly")},
                                                        {"yearly", frame.column("season_yearly")}};
        const auto score = score_decomposition(series.truth, pred);
        worst_trend = std::max(worst_trend, score.at("trend"));
        worst_monthly = std::max(worst_monthly, score.at("monthly"));
        per_seed += fmt::format(" {:.3f}/{:.3f}/{:.3f}", score.at("trend"), score.at("monthly"), score.at("yearly"));
        if (seed == 0) {
            sts_model.emplace(std::move(fitted), series.data);
        }
    }
    out.require(worst_trend <= limit, fmt::format("max trend rmse {:.4f} <= {}", worst_trend, limit));
    out.require(worst_monthly <= limit, fmt::format("max monthly rmse {:.4f} <= {}", worst_monthly, limit));
    out.detail += "; trend/monthly/yearly per seed:" + per_seed;
    const double elapsed = seconds_since(t0);
    out.require(elapsed < 300.0, fmt::format("{:.0f}s < 300s", elapsed));
    return out;
}

Outcome ar_recovery()
{
    Outcome out;
    ModelConfig cfg;
    cfg.trend.enabled = false;
    cfg.seasonality.auto_enable = false;
    cfg.ar.n_lags = 2;
    const double phi[] = {0.3, 0.3};
    const auto y = gen_ar_process(6000, phi, 0.1, 2024);
    const auto fitted = fit(nptest::daily(y), cfg);
    const auto w = fitted.model.ar_weights();
    const auto ols = nptest::lag_ols(y, y, 2);
    for (int k = 0; k < 2; ++k) {
        out.require(std::abs(w[k] - 0.3) <= 0.05, fmt::format("phi{}={:.4f}", k + 1, w[k]));
        out.require(std::abs(w[k] - ols[k]) <= 0.01, fmt::format("ols{}={:.4f}", k + 1, ols[k]));
    }

    const double phi3[] = {0.2, 0.3, -0.5};
    const auto y3 = gen_ar_process(6000, phi3, 0.1, 2025);
    cfg.ar.n_lags = 10;
    cfg.ar.sparsity = 1e-3;
    const auto sparse = fit(nptest::daily(y3), cfg);
    const auto w10 = sparse.model.ar_weights();
    double head = 0.0, tail = 0.0;
    for (int k = 0; k < 10; ++k) {
        (k < 3 ? head : tail) += std::abs(w10[k]) / (k < 3 ? 3.0 : 7.0);
    }
    out.require(tail < 0.2 * head, fmt::format("sparse AR(10): lags 4-10 at {:.1f}% of lags 1-3", 100.0 * tail / head));
    return out;
}

double mean_h1_mase(const Dataset& data, const ModelConfig& cfg)
{
    const std::vector<std::size_t> horizons{1};
    BacktestOptions opts;
    opts.timing = false;
    const auto report = run_backtest(data, cfg, horizons, opts);
    if (report.partial()) {
        throw std::runtime_error("backtest had failed folds");
    }
    return report.summary().at(0).mase.mean;
}

Outcome central_claim()
{
    Outcome out;
    const auto t0 = Clock::now();
    for (const char* id : {"S-AL", "S-TSAL"}) {
        double lags = 0.0, plain = 0.0;
        std::string per;
        SynthOptions opt;
        for (std::size_t i = 0; i < opt.series; ++i) {
            const auto s = compose_scenario(find_scenario(id), opt, i);
            const double a = mean_h1_mase(s.data, lags_config());
            const double b = mean_h1_mase(s.data, ModelConfig{});
            lags += a / static_cast<double>(opt.series);
            plain += b / static_cast<double>(opt.series);
            per += fmt::format(" {:.3f}/{:.3f}", a, b);
        }
        out.require(lags < 1.0, fmt::format("{} 30 lags MASE {:.3f} < 1", id, lags));
        out.require(plain > 1.0, fmt::format("{} time-only MASE {:.3f} > 1", id, plain));
        out.detail += fmt::format("; {} per series lags/time-only:{}", id, per);
    }
    const double elapsed = seconds_since(t0);
    out.require(elapsed < 600.0, fmt::format("{:.0f}s < 600s", elapsed));
    return out;
}

Outcome backtest_geometry()
{
    Outcome out;
    const auto folds = make_folds(100);
    bool exact = folds.size() == 5;
    for (std::size_t i = 0; exact && i < 5; ++i) {
        exact = folds[i].train_end == 70 + 5 * i && folds[i].test_start == 70 + 5 * i &&
                folds[i].test_end == 80 + 5 * i;
    }
    out.require(exact, "T=100 folds [0,70)/[70,80) ... [0,90)/[90,100)");

    double lo = 1e9, hi = -1e9;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<double> y(2000);
        double v = 0.0;
        for (auto& x : y) {
            v += g(rng);
            x = v;
        }
        const std::vector<std::size_t> horizons{1};
        BacktestOptions opts;
        opts.include_model = false;
        opts.include_naive = true;
        const double m = run_backtest(nptest::daily(y), ModelConfig{}, horizons, opts).summary().at(0).mase.mean;
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    out.require(lo >= 0.9 && hi <= 1.1, fmt::format("naive h=1 MASE over 20 random walks in [{:.3f}, {:.3f}]", lo, hi));
    return out;
}

Outcome invariants()
{
    Outcome out;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-2.0, 2.0);

    double trend_gap = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        TrendParams p{u(rng), u(rng), init_changepoints(8), {}};
        for (std::size_t j = 0; j < 8; ++j) {
            p.delta.push_back(u(rng));
        }
        for (double c : p.changepoints) {
            trend_gap = std::max(trend_gap, std::abs(trend_eval(c - 1e-12, p) - trend_eval(c + 1e-12, p)));
        }
    }
    out.require(trend_gap < 1e-9, fmt::format("trend continuity {:.1e}", trend_gap));

    double period_gap = 0.0;
    for (double p : {1.0, 7.0, 30.0, 365.25}) {
        std::vector<double> c(12);
        for (auto& x : c) {
            x = u(rng);
        }
        for (int trial = 0; trial < 200; ++trial) {
            const double t = 5000.0 * u(rng);
            period_gap = std::max(period_gap, std::abs(seasonal_effect(t + p, p, c) - seasonal_effect(t, p, c)));
        }
    }
    out.require(period_gap < 1e-10, fmt::format("seasonal periodicity {:.1e}", period_gap));

    double round_trip = 0.0;
    std::lognormal_distribution<double> ln(0.0, 2.0);
    for (auto mode : {NormalizeMode::MinMax, NormalizeMode::Standardize, NormalizeMode::Soft, NormalizeMode::Soft1}) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> v(50);
            for (auto& x : v) {
                x = ln(rng) - 2.0;
            }
            const auto s = fit_normalization(v, mode);
            const auto back = s.invert(s.apply(v));
            for (std::size_t i = 0; i < v.size(); ++i) {
                round_trip = std::max(round_trip, std::abs(back[i] - v[i]) / std::max(std::abs(v[i]), 1e-300));
            }
        }
    }
    out.require(round_trip < 1e-12, fmt::format("normalization round trip {:.1e} rel", round_trip));

    // component sums on a model with every module kind
    SynthOptions opt;
    opt.length = 900;
    const auto s = compose_scenario(find_scenario("S-TSEFAL"), opt, 0);
    auto cfg = lags_config();
    cfg.n_forecasts = 3;
    cfg.ar.n_lags = 7;
    cfg.lagged_regressors[0].net.n_lags = 3;
    cfg.seasonality.mode = ComponentMode::Multiplicative;
    cfg.train.epochs = 20;
    EventConfig ev;
    ev.event.name = "event";
    ev.column = "event";
    cfg.events.push_back(ev);
    cfg.future_regressors.push_back({"future", ComponentMode::Multiplicative, NormalizeMode::Auto, 0.0});
    const auto fitted = fit(s.data, cfg);
    const auto frame = predict(fitted, s.data, {true, Exec::Parallel});
    double sum_gap = 0.0;
    for (std::size_t i = 1; i <= 3; ++i) {
        const auto& yhat = frame.column(fmt::format("yhat{}", i));
        for (std::size_t r = 0; r < frame.rows(); ++r) {
            if (std::isnan(yhat[r])) {
                continue;
            }
            double total = frame.column(fmt::format("ar{}", i))[r] + frame.column(fmt::format("lagged_x{}", i))[r];
            for (const auto& c : frame.columns) {
                if (c == "trend" || c.starts_with("season_") || c.starts_with("event_") || c.starts_with("future_")) {
                    total += frame.column(c)[r];
                }
            }
            sum_gap = std::max(sum_gap, std::abs(total - yhat[r]));
        }
    }
    out.require(sum_gap < 1e-9, fmt::format("component sum vs yhat {:.1e}", sum_gap));

    const auto again = fit(s.data, cfg);
    out.require(again.model.params == fitted.model.params, "rerun bit-identical");
    return out;
}

Outcome prediction_speed()
{
    Outcome out;
    if (!sts_model) {
        SynthOptions opt;
        const auto series = compose_scenario(find_scenario("S-TS"), opt, 0);
        sts_model.emplace(fit(series.data, sts_config()), series.data);
    }
    auto t0 = Clock::now();
    const auto frame = predict(sts_model->first, sts_model->second, {true, Exec::Parallel});
    const double time_only = seconds_since(t0);
    out.require(frame.rows() == 6000 && time_only < 1.0, fmt::format("time-only model {:.3f}s", time_only));

    SynthOptions opt;
    const auto s = compose_scenario(find_scenario("S-TSAL"), opt, 0);
    const auto fitted = fit(s.data, lags_config());
    t0 = Clock::now();
    const auto lagged = predict(fitted, s.data, {true, Exec::Parallel});
    const double with_lags = seconds_since(t0);
    out.require(lagged.rows() == 6000 && with_lags < 1.0, fmt::format("30-lag model {:.3f}s", with_lags));
    return out;
}

} // namespace

int main()
{
    spdlog::set_level(spdlog::level::warn);
    report(1, "gradient suite", gradient_suite);
    report(2, "heuristic formulas", heuristics);
    report(3, "decomposition oracle on S-TS", decomposition_oracle);
    report(4, "AR recovery", ar_recovery);
    report(5, "lags beat time-only on S-AL and S-TSAL", central_claim);
    report(6, "backtest geometry and naive MASE", backtest_geometry);
    report(7, "invariant suites", invariants);
    report(8, "prediction speed", prediction_speed);
    fmt::print("{} of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
