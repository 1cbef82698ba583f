#include "fixtures.hpp"

#include "nprophet/errors.hpp"
#include "nprophet/fit.hpp"
#include "nprophet/forecast.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace nprophet;

namespace {

ModelConfig trend_only(std::size_t changepoints)
{
    ModelConfig cfg;
    cfg.seasonality.auto_enable = false;
    cfg.trend.n_changepoints = changepoints;
    return cfg;
}

std::vector<double> wave(std::size_t n)
{
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) {
        y[t] = 10.0 + 0.01 * t + std::sin(2 * 3.14159265358979 * t / 7.0) + 0.3 * std::cos(0.9 * t * t);
    }
    return y;
}

} // namespace

TEST(Fit, ConstantSeriesGivesConstantForecast)
{
    const auto data = nptest::daily(std::vector<double>(200, 5.0));
    const auto fitted = fit(data, trend_only(0), {Exec::Serial, {}});
    const auto frame = predict(fitted, data);
    for (double v : frame.column("yhat1")) {
        EXPECT_NEAR(v, 5.0, 1e-3);
    }
}

TEST(Fit, LineRecoversSlopeAndOffset)
{
    const std::size_t n = 300;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = 2.0 * static_cast<double>(i) / static_cast<double>(n - 1) + 1.0;
    }
    auto cfg = trend_only(0);
    cfg.normalize = NormalizeMode::Off;
    const auto fitted = fit(nptest::daily(y), cfg, {Exec::Serial, {}});
    const auto tp = fitted.model.trend();
    EXPECT_NEAR(tp.delta0, 2.0, 5e-2);
    EXPECT_NEAR(tp.rho0, 1.0, 5e-2);
}

TEST(Fit, SeededRunsAreBitIdentical)
{
    auto cfg = trend_only(5);
    cfg.seasonality.weekly = true;
    cfg.ar.n_lags = 7;
    cfg.ar.hidden_layers = {4};
    cfg.n_forecasts = 2;
    cfg.train.seed = 17;
    const auto data = nptest::daily(wave(250));
    const auto a = fit(data, cfg, {Exec::Serial, {}});
    const auto b = fit(data, cfg, {Exec::Serial, {}});
    const auto c = fit(data, cfg, {Exec::Parallel, {}});
    EXPECT_EQ(a.model.params, b.model.params);
    EXPECT_EQ(a.model.params, c.model.params);
    EXPECT_EQ(a.learning_rate, c.learning_rate);
    cfg.train.seed = 18;
    EXPECT_NE(fit(data, cfg, {Exec::Serial, {}}).model.params, a.model.params);
}

TEST(Fit, RecordsEpochMetrics)
{
    auto cfg = trend_only(3);
    cfg.seasonality.weekly = true;
    cfg.train.epochs = 12;
    cfg.train.batch_size = 16;
    cfg.train.learning_rate = 0.05;
    std::size_t calls = 0;
    FitOptions opts;
    opts.on_epoch = [&](const EpochMetrics& m) { EXPECT_EQ(m.epoch, ++calls); };
    const auto fitted = fit(nptest::daily(wave(120)), cfg, opts);
    EXPECT_EQ(calls, 12u);
    ASSERT_EQ(fitted.history.size(), 12u);
    EXPECT_EQ(fitted.epochs, 12u);
    EXPECT_EQ(fitted.batch_size, 16u);
    EXPECT_EQ(fitted.learning_rate, 0.05);
    EXPECT_LT(fitted.history.back().loss, fitted.history.front().loss);
    for (const auto& m : fitted.history) {
        EXPECT_GE(m.rmse, m.mae);
        EXPECT_GT(m.mae, 0.0);
    }
}

TEST(Fit, HeuristicsFillUnsetHyperparameters)
{
    const auto fitted = fit(nptest::daily(wave(144)), trend_only(2), {Exec::Serial, {}});
    EXPECT_EQ(fitted.batch_size, 16u);
    EXPECT_EQ(fitted.epochs, 292u);
    EXPECT_GT(fitted.learning_rate, 1e-7);
    EXPECT_LT(fitted.learning_rate, 1e2);
}

TEST(Fit, RejectsTooShortSeries)
{
    auto cfg = trend_only(0);
    cfg.ar.n_lags = 10;
    cfg.n_forecasts = 3;
    EXPECT_THROW(fit(nptest::daily(wave(12)), cfg), InsufficientData);
}

TEST(Fit, MissingRegressorColumnIsParseError)
{
    auto cfg = trend_only(0);
    cfg.future_regressors.push_back({"temp", ComponentMode::Additive, NormalizeMode::Auto, 0.0});
    EXPECT_THROW(fit(nptest::daily(wave(50)), cfg), ParseError);
}

TEST(Fit, SgdTrains)
{
    auto cfg = trend_only(0);
    cfg.train.optimizer = OptimizerKind::Sgd;
    cfg.train.loss = LossKind::Mse;
    const auto fitted = fit(nptest::daily(wave(200)), cfg, {Exec::Serial, {}});
    EXPECT_LT(fitted.history.back().loss, fitted.history.front().loss);
}
