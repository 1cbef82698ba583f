#pragma once

#include "nprophet/time_series.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nprophet {

/// Min-max scaling onto [0, 1]; a constant series maps to zeros.
std::vector<double> scale_unit(std::span<const double> values);

/// Up-then-down piecewise-linear trend with one changepoint drawn uniformly
/// from the middle 80% of the series, scaled to [0, 1].
std::vector<double> gen_trend(std::size_t n, std::uint64_t seed, std::size_t* changepoint = nullptr);

/// Sum of `order` Fourier pairs at day index t = 0..n-1 with coefficients
/// laid out (a_1, b_1, ..., a_k, b_k). Not scaled.
std::vector<double> fourier_series(std::size_t n, double period, std::span<const double> coefficients);

/// Fourier series with a_j, b_j ~ U[0, 1). Not scaled; `coefficients`
/// receives the 2k draws when given.
std::vector<double> gen_seasonality(std::size_t n, double period, std::size_t order, std::uint64_t seed,
                                    std::vector<double>* coefficients = nullptr);

/// Binary series with exactly `occurrences` ones at distinct positions.
std::vector<double> gen_events(std::size_t n, std::size_t occurrences, std::uint64_t seed);

/// Companion-matrix spectral radius below one.
bool is_stationary(std::span<const double> coefficients);

/// y_t = sum_i phi_i y_{t-i} + N(0, sigma^2), started from zeros with a
/// discarded burn-in. Throws NonStationary.
std::vector<double> gen_ar_process(std::size_t n, std::span<const double> coefficients, double sigma,
                                   std::uint64_t seed, std::size_t burn_in = 100);

/// L(t) = sum_k c_k x_{t-k}; the first len(c) entries use only available lags.
std::vector<double> lagged_effect(std::span<const double> x, std::span<const double> c);

struct LaggedDraw {
    std::vector<double> x;      // covariate, scaled to [0, 1]
    std::vector<double> effect; // L, unscaled
    std::vector<double> c;      // three weights in (0, 1]
};

/// Covariate from an AR(2) process and its three-lag effect.
LaggedDraw gen_lagged_effect(std::size_t n, std::uint64_t seed, double sigma = 0.1);

enum class SynthComponent { Trend, Monthly, Yearly, Event, Future, Ar, Lagged };

std::string component_name(SynthComponent c);

struct ScenarioDef {
    std::string id;
    std::vector<SynthComponent> components;
    bool multiplicative = false;
};

/// The seven scenarios of the synthetic benchmark.
const std::vector<ScenarioDef>& scenario_table();
/// Throws ParseError for an unknown id.
const ScenarioDef& find_scenario(std::string_view id);

struct SynthOptions {
    std::size_t length = 6000;
    std::size_t series = 5;
    double noise_sigma = 0.05;
    double process_sigma = 0.1; // AR white noise before scaling
    std::uint64_t seed = 0;
    std::string start = "2000-01-01";
};

/// Ground truth of one generated series. `contribution` is each
/// component's share of the final y (same units, offsets arbitrary).
struct ComponentTruth {
    std::vector<SynthComponent> components;
    std::map<std::string, std::vector<double>> scaled;
    std::map<std::string, std::vector<double>> contribution;
    std::size_t trend_changepoint = 0;
    std::vector<double> monthly_coefficients;
    std::vector<double> yearly_coefficients;
    std::vector<double> lagged_weights;
    double aggregate_min = 0.0;
    double aggregate_max = 1.0;
};

struct SynthSeries {
    Dataset data; // y plus model inputs: event, future, x
    ComponentTruth truth;
};

/// One series of a scenario. `index` selects which of the independent
/// series to draw; the same (seed, index) always gives identical output.
SynthSeries compose_scenario(const ScenarioDef& scenario, const SynthOptions& options, std::size_t index = 0);

/// Zero-centered RMSE per truth component; absent predictions count as
/// all-zero. Throws LengthMismatch.
std::map<std::string, double> score_decomposition(const ComponentTruth& truth,
                                                  const std::map<std::string, std::vector<double>>& predicted);

double centered_rmse(std::span<const double> truth, std::span<const double> predicted);

/// Writes <id>_<i>.csv for every series plus manifest.json. Columns: ds, y,
/// model inputs, then truth_<component> contributions.
std::vector<std::filesystem::path> write_scenario(const ScenarioDef& scenario, const SynthOptions& options,
                                                  const std::filesystem::path& out_dir);

} // namespace nprophet
