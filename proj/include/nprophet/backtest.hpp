#pragma once

#include "nprophet/config.hpp"
#include "nprophet/fit.hpp"
#include "nprophet/time_series.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nprophet {

/// Horizon value standing for "forecast the whole test fold at once".
inline constexpr std::size_t kHorizonAll = 0;

std::string horizon_label(std::size_t horizon);
/// Parses "1,3,15,inf"; "inf" or "all" map to kHorizonAll.
std::vector<std::size_t> parse_horizons(const std::string& text);

struct FoldSpec {
    std::size_t index = 1; // 1-based
    std::size_t train_end = 0;
    std::size_t test_start = 0;
    std::size_t test_end = 0;

    std::size_t test_size() const { return test_end - test_start; }
};

/// Expanding-origin folds: fold i trains on [0, floor(f_i T)) with
/// f_i = 1 - test_frac - (k - i) step_frac and tests on the next
/// floor(test_frac T) rows. Throws InsufficientData when a test window is
/// empty or runs past the end.
std::vector<FoldSpec> make_folds(std::size_t n, std::size_t k = 5, double test_frac = 0.10,
                                 double step_frac = 0.05);

/// Forecasts pooled over every origin and step of one fold.
struct FoldForecasts {
    std::vector<double> actual;
    std::vector<double> forecast;
    std::size_t origins = 0;
};

/// Rolling origin through the test fold without refitting: each origin
/// sees observed values up to the row before it and contributes all h
/// forecasts; origins without h remaining targets are skipped. Models
/// without lags forecast the whole fold in one pass.
FoldForecasts rolling_origin_eval(const FittedModel& fitted, const Dataset& data, const FoldSpec& fold,
                                  Exec exec = Exec::Serial);

/// Reference predictor: y_hat(t + i) = y(t - 1) for every step i.
FoldForecasts naive_eval(const Dataset& data, const FoldSpec& fold, std::size_t horizon);

struct BacktestRecord {
    std::string model;
    std::size_t fold = 0;
    std::size_t horizon = 1;
    double mase = 0.0;
    double rmsse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    double train_s = 0.0;
    double predict_s = 0.0;
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

struct MetricSummary {
    double mean = 0.0;
    double std = 0.0; // sample standard deviation across folds
};

struct BacktestSummary {
    std::string model;
    std::size_t horizon = 1;
    std::size_t folds_ok = 0;
    MetricSummary mase, rmsse, rmse, mae, train_s, predict_s;
};

struct BacktestReport {
    std::vector<BacktestRecord> records;

    bool partial() const;
    std::vector<BacktestSummary> summary() const;
};

struct BacktestOptions {
    std::size_t folds = 5;
    double test_frac = 0.10;
    double step_frac = 0.05;
    std::string model_name = "model";
    bool include_model = true;
    bool include_naive = false;
    bool timing = true;
    Exec exec = Exec::Parallel; // folds run concurrently
};

/// Fits every fold (fold failures are recorded, not fatal) and scores the
/// pooled forecasts with MASE, RMSSE, RMSE and MAE in original units.
BacktestReport run_backtest(const Dataset& data, const ModelConfig& config, std::span<const std::size_t> horizons,
                            const BacktestOptions& options = {});

void write_report(std::ostream& out, const BacktestReport& report);
BacktestReport read_report(std::istream& in);

/// Mean (std) per model and horizon, one block per metric.
void print_summary_table(std::ostream& out, const BacktestReport& report);

} // namespace nprophet
