#include "nprophet/synth.hpp"

#include "nprophet/csv.hpp"
#include "nprophet/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <numeric>
#include <random>

namespace nprophet {

namespace {

// splitmix64 finalizer: independent streams per (seed, series, component)
std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::size_t index, SynthComponent c)
{
    return mix(mix(seed) ^ mix(index * 16 + static_cast<std::size_t>(c) + 1));
}

} // namespace

std::vector<double> scale_unit(std::span<const double> values)
{
    std::vector<double> out(values.begin(), values.end());
    if (out.empty()) {
        return out;
    }
    const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
    const double min = *lo;
    const double range = *hi - *lo;
    for (auto& v : out) {
        v = range > 0.0 ? (v - min) / range : 0.0;
    }
    return out;
}

std::vector<double> gen_trend(std::size_t n, std::uint64_t seed, std::size_t* changepoint)
{
    std::mt19937_64 rng(seed);
    const auto lo = static_cast<std::size_t>(0.1 * static_cast<double>(n));
    const auto hi = std::max(lo, static_cast<std::size_t>(0.9 * static_cast<double>(n)));
    const std::size_t cp = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    const double down = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double x = static_cast<double>(t);
        const double c = static_cast<double>(cp);
        out[t] = t <= cp ? x : c - down * (x - c);
    }
    if (changepoint) {
        *changepoint = cp;
    }
    return scale_unit(out);
}

std::vector<double> fourier_series(std::size_t n, double period, std::span<const double> coefficients)
{
    std::vector<double> out(n, 0.0);
    const std::size_t order = coefficients.size() / 2;
    for (std::size_t t = 0; t < n; ++t) {
        double v = 0.0;
        for (std::size_t j = 1; j <= order; ++j) {
            const double arg = 2.0 * std::numbers::pi * static_cast<double>(j) * static_cast<double>(t) / period;
            v += coefficients[2 * (j - 1)] * std::cos(arg) + coefficients[2 * (j - 1) + 1] * std::sin(arg);
        }
        out[t] = v;
    }
    return out;
}

std::vector<double> gen_seasonality(std::size_t n, double period, std::size_t order, std::uint64_t seed,
                                    std::vector<double>* coefficients)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> coef(2 * order);
    for (auto& c : coef) {
        c = u(rng);
    }
    if (coefficients) {
        *coefficients = coef;
    }
    return fourier_series(n, period, coef);
}

std::vector<double> gen_events(std::size_t n, std::size_t occurrences, std::uint64_t seed)
{
    if (occurrences > n) {
        throw InsufficientData(fmt::format("cannot place {} events in {} rows", occurrences, n));
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // partial Fisher-Yates: the first `occurrences` slots form the sample
    for (std::size_t i = 0; i < occurrences; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < occurrences; ++i) {
        out[idx[i]] = 1.0;
    }
    return out;
}

bool is_stationary(std::span<const double> coefficients)
{
    const auto p = static_cast<Eigen::Index>(coefficients.size());
    if (p == 0) {
        return true;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        companion(0, i) = coefficients[static_cast<std::size_t>(i)];
    }
    for (Eigen::Index i = 1; i < p; ++i) {
        companion(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff() < 1.0;
}

std::vector<double> gen_ar_process(std::size_t n, std::span<const double> coefficients, double sigma,
                                   std::uint64_t seed, std::size_t burn_in)
{
    if (!is_stationary(coefficients)) {
        throw NonStationary("AR coefficients have a companion root on or outside the unit circle");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t p = coefficients.size();
    std::vector<double> y(n + burn_in, 0.0);
    for (std::size_t t = 0; t < y.size(); ++t) {
        double v = sigma * noise(rng);
        for (std::size_t i = 1; i <= p && i <= t; ++i) {
            v += coefficients[i - 1] * y[t - i];
        }
        y[t] = v;
    }
    return {y.begin() + static_cast<std::ptrdiff_t>(burn_in), y.end()};
}

std::vector<double> lagged_effect(std::span<const double> x, std::span<const double> c)
{
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t t = 0; t < x.size(); ++t) {
        for (std::size_t k = 1; k <= c.size() && k <= t; ++k) {
            out[t] += c[k - 1] * x[t - k];
        }
    }
    return out;
}

LaggedDraw gen_lagged_effect(std::size_t n, std::uint64_t seed, double sigma)
{
    LaggedDraw draw;
    const double phi[] = {0.3, 0.3};
    draw.x = scale_unit(gen_ar_process(n, phi, sigma, mix(seed)));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 3; ++k) {
        draw.c.push_back(1.0 - u(rng)); // (0, 1]
    }
    draw.effect = lagged_effect(draw.x, draw.c);
    return draw;
}

std::string component_name(SynthComponent c)
{
    switch (c) {
    case SynthComponent::Trend: return "trend";
    case SynthComponent::Monthly: return "monthly";
    case SynthComponent::Yearly: return "yearly";
    case SynthComponent::Event: return "event";
    case SynthComponent::Future: return "future";
    case SynthComponent::Ar: return "ar";
    case SynthComponent::Lagged: return "lagged";
    }
    return "?";
}

const std::vector<ScenarioDef>& scenario_table()
{
    using C = SynthComponent;
    static const std::vector<ScenarioDef> table = {
        {"S-TS", {C::Trend, C::Monthly, C::Yearly}, false},
        {"S-EF", {C::Event, C::Future}, false},
        {"S-TSEF", {C::Trend, C::Monthly, C::Yearly, C::Event, C::Future}, false},
        {"S-mTSEF", {C::Trend, C::Monthly, C::Yearly, C::Event, C::Future}, true},
        {"S-AL", {C::Ar, C::Lagged}, false},
        {"S-TSAL", {C::Trend, C::Monthly, C::Yearly, C::Ar, C::Lagged}, false},
        {"S-TSEFAL", {C::Trend, C::Monthly, C::Yearly, C::Event, C::Future, C::Ar, C::Lagged}, false},
    };
    return table;
}

const ScenarioDef& find_scenario(std::string_view id)
{
    for (const auto& s : scenario_table()) {
        if (s.id == id) {
            return s;
        }
    }
    throw ParseError(fmt::format("unknown scenario '{}'", id));
}

SynthSeries compose_scenario(const ScenarioDef& scenario, const SynthOptions& options, std::size_t index)
{
    const std::size_t n = options.length;
    if (n < 4) {
        throw InsufficientData("synthetic series need at least 4 rows");
    }
    SynthSeries out;
    auto& truth = out.truth;
    truth.components = scenario.components;
    auto seed_for = [&](SynthComponent c) { return stream_seed(options.seed, index, c); };

    std::map<std::string, std::vector<double>> inputs;
    for (auto c : scenario.components) {
        std::vector<double> scaled;
        switch (c) {
        case SynthComponent::Trend:
            scaled = gen_trend(n, seed_for(c), &truth.trend_changepoint);
            break;
        case SynthComponent::Monthly:
            scaled = scale_unit(gen_seasonality(n, 30.0, 5, seed_for(c), &truth.monthly_coefficients));
            break;
        case SynthComponent::Yearly:
            scaled = scale_unit(gen_seasonality(n, 365.0, 5, seed_for(c), &truth.yearly_coefficients));
            break;
        case SynthComponent::Event:
            scaled = gen_events(n, 25, seed_for(c));
            inputs["event"] = scaled;
            break;
        case SynthComponent::Future: {
            const double phi[] = {0.2, 0.3, -0.5};
            scaled = scale_unit(gen_ar_process(n, phi, options.process_sigma, seed_for(c)));
            inputs["future"] = scaled;
            break;
        }
        case SynthComponent::Ar: {
            const double phi[] = {0.3, 0.3};
            scaled = scale_unit(gen_ar_process(n, phi, options.process_sigma, seed_for(c)));
            break;
        }
        case SynthComponent::Lagged: {
            auto draw = gen_lagged_effect(n, seed_for(c), options.process_sigma);
            truth.lagged_weights = draw.c;
            inputs["x"] = draw.x;
            scaled = scale_unit(draw.effect);
            break;
        }
        }
        truth.scaled[component_name(c)] = std::move(scaled);
    }

    // raw contributions to the aggregate, before the final rescale
    const bool has_trend = truth.scaled.contains("trend");
    std::map<std::string, std::vector<double>> raw;
    for (const auto& [name, s] : truth.scaled) {
        raw[name] = s;
        if (scenario.multiplicative && has_trend && name != "trend") {
            const auto& tr = truth.scaled.at("trend");
            for (std::size_t t = 0; t < n; ++t) {
                raw[name][t] *= tr[t];
            }
        }
    }
    std::vector<double> aggregate(n, 0.0);
    for (const auto& [name, r] : raw) {
        for (std::size_t t = 0; t < n; ++t) {
            aggregate[t] += r[t];
        }
    }
    const auto [lo, hi] = std::minmax_element(aggregate.begin(), aggregate.end());
    truth.aggregate_min = *lo;
    truth.aggregate_max = *hi;
    const double range = *hi - *lo;
    const double inv = range > 0.0 ? 1.0 / range : 0.0;
    for (auto& [name, r] : raw) {
        for (auto& v : r) {
            v *= inv;
        }
        truth.contribution[name] = r;
    }

    std::mt19937_64 rng(stream_seed(options.seed, index, SynthComponent::Trend) ^ 0x5eedULL);
    std::normal_distribution<double> noise(0.0, options.noise_sigma);
    Dataset& data = out.data;
    const Timestamp start = parse_timestamp(options.start);
    data.frequency = std::chrono::days{1};
    data.ds.resize(n);
    data.y.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        data.ds[t] = start + std::chrono::days{static_cast<long>(t)};
        data.y[t] = (aggregate[t] - truth.aggregate_min) * inv + noise(rng);
    }
    for (auto& [name, v] : inputs) {
        data.columns[name] = std::move(v);
    }
    return out;
}

double centered_rmse(std::span<const double> truth, std::span<const double> predicted)
{
    if (truth.size() != predicted.size()) {
        throw LengthMismatch(fmt::format("truth has {} values, prediction {}", truth.size(), predicted.size()));
    }
    if (truth.empty()) {
        return 0.0;
    }
    const double n = static_cast<double>(truth.size());
    const double mt = std::accumulate(truth.begin(), truth.end(), 0.0) / n;
    const double mp = std::accumulate(predicted.begin(), predicted.end(), 0.0) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = (truth[i] - mt) - (predicted[i] - mp);
        ss += d * d;
    }
    return std::sqrt(ss / n);
}

std::map<std::string, double> score_decomposition(const ComponentTruth& truth,
                                                  const std::map<std::string, std::vector<double>>& predicted)
{
    std::map<std::string, double> out;
    for (const auto& [name, series] : truth.contribution) {
        const auto it = predicted.find(name);
        if (it == predicted.end()) {
            const std::vector<double> zeros(series.size(), 0.0);
            out[name] = centered_rmse(series, zeros);
        } else {
            out[name] = centered_rmse(series, it->second);
        }
    }
    return out;
}

std::vector<std::filesystem::path> write_scenario(const ScenarioDef& scenario, const SynthOptions& options,
                                                  const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> files;
    nlohmann::json manifest;
    manifest["scenario"] = scenario.id;
    manifest["seed"] = options.seed;
    manifest["length"] = options.length;
    manifest["series"] = options.series;
    manifest["noise_sigma"] = options.noise_sigma;
    manifest["process_sigma"] = options.process_sigma;
    manifest["start"] = options.start;
    manifest["multiplicative"] = scenario.multiplicative;
    manifest["components"] = nlohmann::json::array();
    for (auto c : scenario.components) {
        manifest["components"].push_back(component_name(c));
    }
    manifest["files"] = nlohmann::json::array();

    for (std::size_t i = 0; i < options.series; ++i) {
        SynthSeries s = compose_scenario(scenario, options, i);
        Dataset out = s.data;
        for (const auto& [name, v] : s.truth.contribution) {
            out.columns["truth_" + name] = v;
        }
        const auto path = out_dir / fmt::format("{}_{}.csv", scenario.id, i + 1);
        std::ofstream f(path);
        if (!f) {
            throw Error(fmt::format("cannot write '{}'", path.string()));
        }
        write_dataset(f, out);
        files.push_back(path);

        nlohmann::json entry;
        entry["file"] = path.filename().string();
        entry["trend_changepoint"] = s.truth.trend_changepoint;
        entry["monthly_coefficients"] = s.truth.monthly_coefficients;
        entry["yearly_coefficients"] = s.truth.yearly_coefficients;
        entry["lagged_weights"] = s.truth.lagged_weights;
        entry["aggregate_min"] = s.truth.aggregate_min;
        entry["aggregate_max"] = s.truth.aggregate_max;
        manifest["files"].push_back(entry);
    }
    std::ofstream m(out_dir / fmt::format("{}_manifest.json", scenario.id));
    m << manifest.dump(2) << '\n';
    return files;
}

} // namespace nprophet
