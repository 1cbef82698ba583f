#include "nprophet/backtest.hpp"

#include "nprophet/csv.hpp"
#include "nprophet/errors.hpp"
#include "nprophet/forecast.hpp"
#include "nprophet/metrics.hpp"

#include <boost/algorithm/string.hpp>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace nprophet {

std::string horizon_label(std::size_t horizon)
{
    return horizon == kHorizonAll ? "inf" : std::to_string(horizon);
}

std::vector<std::size_t> parse_horizons(const std::string& text)
{
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
    std::vector<std::size_t> out;
    for (auto p : parts) {
        boost::algorithm::trim(p);
        if (p.empty()) {
            continue;
        }
        if (boost::algorithm::iequals(p, "inf") || boost::algorithm::iequals(p, "all")) {
            out.push_back(kHorizonAll);
            continue;
        }
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(p, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != p.size() || v <= 0) {
            throw ParseError(fmt::format("invalid horizon '{}'", p));
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) {
        throw ParseError("no horizons given");
    }
    return out;
}

std::vector<FoldSpec> make_folds(std::size_t n, std::size_t k, double test_frac, double step_frac)
{
    if (k == 0) {
        throw InsufficientData("at least one fold is required");
    }
    const double t = static_cast<double>(n);
    // the epsilon keeps exact products such as 0.75 * 100 from flooring to 74
    const auto test_size = static_cast<std::size_t>(std::floor(test_frac * t + 1e-9));
    if (test_size == 0) {
        throw InsufficientData(fmt::format("{} rows leave no test samples", n));
    }
    std::vector<FoldSpec> folds;
    for (std::size_t i = 1; i <= k; ++i) {
        const double frac = 1.0 - test_frac - static_cast<double>(k - i) * step_frac;
        if (frac <= 0.0) {
            throw InsufficientData("fold fractions leave no training data");
        }
        FoldSpec f;
        f.index = i;
        f.train_end = static_cast<std::size_t>(std::floor(frac * t + 1e-9));
        f.test_start = f.train_end;
        f.test_end = f.test_start + test_size;
        if (f.train_end < 2 || f.test_end > n) {
            throw InsufficientData(fmt::format("fold {} does not fit into {} rows", i, n));
        }
        folds.push_back(f);
    }
    return folds;
}

FoldForecasts rolling_origin_eval(const FittedModel& fitted, const Dataset& data, const FoldSpec& fold, Exec exec)
{
    const ModelSpec& spec = fitted.model.spec;
    FoldForecasts out;
    if (!spec.uses_lags()) {
        const Dataset test = data.slice(fold.test_start, fold.test_end);
        const ForecastFrame frame = predict(fitted, test, {false, exec});
        const auto& yhat = frame.column("yhat1");
        out.actual = test.y;
        out.forecast = yhat;
        out.origins = 1;
        return out;
    }

    const std::size_t h = spec.n_forecasts;
    const std::size_t p = spec.max_lags();
    const std::size_t begin = fold.test_start >= p ? fold.test_start - p : 0;
    const Dataset window = data.slice(begin, fold.test_end);
    const ForecastFrame frame = predict(fitted, window, {false, exec});
    std::vector<const std::vector<double>*> ages;
    for (std::size_t i = 1; i <= h; ++i) {
        ages.push_back(&frame.column(fmt::format("yhat{}", i)));
    }
    for (std::size_t o = fold.test_start; o + h <= fold.test_end; ++o) {
        bool any = false;
        for (std::size_t i = 0; i < h; ++i) {
            const std::size_t r = o + i - begin;
            const double f = (*ages[i])[r];
            if (std::isnan(f)) {
                continue;
            }
            out.actual.push_back(data.y[o + i]);
            out.forecast.push_back(f);
            any = true;
        }
        out.origins += any ? 1 : 0;
    }
    return out;
}

FoldForecasts naive_eval(const Dataset& data, const FoldSpec& fold, std::size_t horizon)
{
    FoldForecasts out;
    const std::size_t h = horizon == kHorizonAll ? fold.test_size() : horizon;
    for (std::size_t o = std::max<std::size_t>(fold.test_start, 1); o + h <= fold.test_end; ++o) {
        const double last = data.y[o - 1];
        if (std::isnan(last)) {
            continue;
        }
        for (std::size_t i = 0; i < h; ++i) {
            out.actual.push_back(data.y[o + i]);
            out.forecast.push_back(last);
        }
        ++out.origins;
        if (horizon == kHorizonAll) {
            break;
        }
    }
    return out;
}

bool BacktestReport::partial() const
{
    return std::any_of(records.begin(), records.end(), [](const BacktestRecord& r) { return !r.ok(); });
}

namespace {

MetricSummary summarize(const std::vector<double>& xs)
{
    MetricSummary s;
    if (xs.empty()) {
        s.mean = s.std = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) {
            ss += (x - s.mean) * (x - s.mean);
        }
        s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

void score(BacktestRecord& rec, const Dataset& data, const FoldSpec& fold, const FoldForecasts& fc)
{
    const std::span<const double> train(data.y.data(), fold.train_end);
    rec.mase = mase(train, fc.actual, fc.forecast);
    rec.rmsse = rmsse(train, fc.actual, fc.forecast);
    rec.rmse = rmse(fc.actual, fc.forecast);
    rec.mae = mae(fc.actual, fc.forecast);
}

void mark_failed(BacktestRecord& rec, const std::string& what)
{
    rec.status = "failed: " + what;
    boost::algorithm::replace_all(rec.status, ",", ";");
    boost::algorithm::replace_all(rec.status, "\n", " ");
    rec.mase = rec.rmsse = rec.rmse = rec.mae = std::numeric_limits<double>::quiet_NaN();
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// All records of one fold, in horizon order (model first, then naive).
std::vector<BacktestRecord> run_fold(const Dataset& data, const ModelConfig& config,
                                     std::span<const std::size_t> horizons, const BacktestOptions& options,
                                     const FoldSpec& fold)
{
    std::vector<BacktestRecord> out;
    const Dataset train = data.slice(0, fold.train_end);
    const bool lags = config.uses_lags();
    // time-only models do not depend on the horizon; fit once per fold
    std::optional<FittedModel> time_only;
    double time_only_train_s = 0.0;

    for (std::size_t horizon : horizons) {
        if (options.include_model) {
            BacktestRecord rec;
            rec.model = options.model_name;
            rec.fold = fold.index;
            rec.horizon = horizon;
            try {
                if (lags && horizon == kHorizonAll) {
                    throw ParseError("horizon inf needs a model without lags");
                }
                const auto t0 = std::chrono::steady_clock::now();
                const FittedModel* fitted = nullptr;
                FittedModel local;
                if (lags) {
                    ModelConfig cfg = config;
                    cfg.n_forecasts = horizon;
                    local = fit(train, cfg, {options.exec, {}});
                    fitted = &local;
                    rec.train_s = seconds_since(t0);
                } else {
                    if (!time_only) {
                        ModelConfig cfg = config;
                        cfg.n_forecasts = 1;
                        time_only = fit(train, cfg, {options.exec, {}});
                        time_only_train_s = seconds_since(t0);
                    }
                    fitted = &*time_only;
                    rec.train_s = time_only_train_s;
                }
                const auto t1 = std::chrono::steady_clock::now();
                const FoldForecasts fc = rolling_origin_eval(*fitted, data, fold, options.exec);
                rec.predict_s = seconds_since(t1);
                score(rec, data, fold, fc);
            } catch (const std::exception& e) {
                mark_failed(rec, e.what());
            }
            if (!options.timing) {
                rec.train_s = rec.predict_s = 0.0;
            }
            out.push_back(rec);
        }
        if (options.include_naive) {
            BacktestRecord rec;
            rec.model = "naive";
            rec.fold = fold.index;
            rec.horizon = horizon;
            try {
                score(rec, data, fold, naive_eval(data, fold, horizon));
            } catch (const std::exception& e) {
                mark_failed(rec, e.what());
            }
            out.push_back(rec);
        }
    }
    return out;
}

} // namespace

std::vector<BacktestSummary> BacktestReport::summary() const
{
    // first-seen order of (model, horizon)
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (const auto& r : records) {
        const std::pair key{r.model, r.horizon};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(key);
        }
    }
    std::vector<BacktestSummary> out;
    for (const auto& [model, horizon] : keys) {
        std::vector<double> mase_v, rmsse_v, rmse_v, mae_v, train_v, predict_v;
        for (const auto& r : records) {
            if (r.model != model || r.horizon != horizon || !r.ok()) {
                continue;
            }
            mase_v.push_back(r.mase);
            rmsse_v.push_back(r.rmsse);
            rmse_v.push_back(r.rmse);
            mae_v.push_back(r.mae);
            train_v.push_back(r.train_s);
            predict_v.push_back(r.predict_s);
        }
        BacktestSummary s;
        s.model = model;
        s.horizon = horizon;
        s.folds_ok = mase_v.size();
        s.mase = summarize(mase_v);
        s.rmsse = summarize(rmsse_v);
        s.rmse = summarize(rmse_v);
        s.mae = summarize(mae_v);
        s.train_s = summarize(train_v);
        s.predict_s = summarize(predict_v);
        out.push_back(s);
    }
    return out;
}

BacktestReport run_backtest(const Dataset& data, const ModelConfig& config, std::span<const std::size_t> horizons,
                            const BacktestOptions& options)
{
    const auto folds = make_folds(data.size(), options.folds, options.test_frac, options.step_frac);
    std::vector<std::vector<BacktestRecord>> per_fold(folds.size());
    // Folds are independent; each keeps its own records so the merged
    // report does not depend on completion order.
    const Exec inner = options.exec == Exec::Parallel && folds.size() > 1 ? Exec::Serial : options.exec;
    BacktestOptions fold_options = options;
    fold_options.exec = inner;
#pragma omp parallel for schedule(dynamic, 1) if (options.exec == Exec::Parallel)
    for (std::size_t f = 0; f < folds.size(); ++f) {
        per_fold[f] = run_fold(data, config, horizons, fold_options, folds[f]);
    }
    BacktestReport report;
    // records ordered by horizon, model, fold
    for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
        const std::size_t per_h = (options.include_model ? 1 : 0) + (options.include_naive ? 1 : 0);
        for (std::size_t m = 0; m < per_h; ++m) {
            for (const auto& recs : per_fold) {
                report.records.push_back(recs[hi * per_h + m]);
            }
        }
    }
    return report;
}

void write_report(std::ostream& out, const BacktestReport& report)
{
    out << "# backtest report\n";
    out << "model,fold,horizon,mase,rmsse,rmse,mae,train_s,predict_s,status\n";
    for (const auto& r : report.records) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.model, r.fold, horizon_label(r.horizon),
                           format_value(r.mase), format_value(r.rmsse), format_value(r.rmse), format_value(r.mae),
                           format_value(r.train_s), format_value(r.predict_s), r.status);
    }
    out << "# summary" << (report.partial() ? " (partial: some folds failed)" : "") << '\n';
    out << "model,horizon,folds_ok,mase_mean,mase_std,rmsse_mean,rmsse_std,rmse_mean,rmse_std,mae_mean,mae_std,"
           "train_s_mean,train_s_std,predict_s_mean,predict_s_std\n";
    for (const auto& s : report.summary()) {
        out << fmt::format("{},{},{}", s.model, horizon_label(s.horizon), s.folds_ok);
        for (const auto* m : {&s.mase, &s.rmsse, &s.rmse, &s.mae, &s.train_s, &s.predict_s}) {
            out << ',' << format_value(m->mean) << ',' << format_value(m->std);
        }
        out << '\n';
    }
}

BacktestReport read_report(std::istream& in)
{
    BacktestReport report;
    std::string line;
    bool in_records = false;
    while (std::getline(in, line)) {
        if (line.starts_with("# summary")) {
            break;
        }
        if (line.empty() || line.starts_with('#')) {
            continue;
        }
        if (line.starts_with("model,fold,")) {
            in_records = true;
            continue;
        }
        if (!in_records) {
            continue;
        }
        std::vector<std::string> cells;
        boost::algorithm::split(cells, line, boost::algorithm::is_any_of(","));
        if (cells.size() != 10) {
            throw ParseError(fmt::format("malformed report line '{}'", line));
        }
        BacktestRecord r;
        r.model = cells[0];
        r.fold = static_cast<std::size_t>(std::stoul(cells[1]));
        r.horizon = cells[2] == "inf" ? kHorizonAll : static_cast<std::size_t>(std::stoul(cells[2]));
        r.mase = parse_value(cells[3]);
        r.rmsse = parse_value(cells[4]);
        r.rmse = parse_value(cells[5]);
        r.mae = parse_value(cells[6]);
        r.train_s = parse_value(cells[7]);
        r.predict_s = parse_value(cells[8]);
        r.status = cells[9];
        report.records.push_back(r);
    }
    return report;
}

void print_summary_table(std::ostream& out, const BacktestReport& report)
{
    const auto summary = report.summary();
    std::vector<std::size_t> horizons;
    std::vector<std::string> models;
    for (const auto& s : summary) {
        if (std::find(horizons.begin(), horizons.end(), s.horizon) == horizons.end()) {
            horizons.push_back(s.horizon);
        }
        if (std::find(models.begin(), models.end(), s.model) == models.end()) {
            models.push_back(s.model);
        }
    }
    auto find = [&](const std::string& m, std::size_t h) -> const BacktestSummary* {
        for (const auto& s : summary) {
            if (s.model == m && s.horizon == h) {
                return &s;
            }
        }
        return nullptr;
    };
    auto block = [&](const std::string& title, MetricSummary BacktestSummary::*field) {
        out << fmt::format("{:<12}", title);
        for (auto h : horizons) {
            out << fmt::format("{:>20}", "h=" + horizon_label(h));
        }
        out << '\n';
        for (const auto& m : models) {
            out << fmt::format("{:<12}", m);
            for (auto h : horizons) {
                const auto* s = find(m, h);
                if (s == nullptr || s->folds_ok == 0) {
                    out << fmt::format("{:>20}", "-");
                } else {
                    const auto& v = s->*field;
                    out << fmt::format("{:>20}", fmt::format("{:.3f} ({:.3f})", v.mean, v.std));
                }
            }
            out << '\n';
        }
        out << '\n';
    };
    block("MASE", &BacktestSummary::mase);
    block("RMSSE", &BacktestSummary::rmsse);
    block("train [s]", &BacktestSummary::train_s);
    block("predict [s]", &BacktestSummary::predict_s);
    if (report.partial()) {
        out << "note: some folds failed; see the report file\n";
    }
}

} // namespace nprophet
