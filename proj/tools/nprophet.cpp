#include "nprophet/backtest.hpp"
#include "nprophet/config_io.hpp"
#include "nprophet/csv.hpp"
#include "nprophet/errors.hpp"
#include "nprophet/fit.hpp"
#include "nprophet/forecast.hpp"
#include "nprophet/model_io.hpp"
#include "nprophet/synth.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <optional>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace {

using namespace nprophet;

enum Exit { Ok = 0, Failure = 1, BadInput = 2, TooLittleData = 3, Diverged = 4, NoRegressor = 5 };

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

ModelConfig load_config(const Globals& g, std::string* text)
{
    ModelConfig cfg;
    if (!g.config.empty()) {
        *text = read_text_file(g.config);
        cfg = parse_config(*text);
    }
    if (g.seed) {
        cfg.train.seed = *g.seed;
    }
    return cfg;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error(fmt::format("cannot write '{}'", path));
    }
    return out;
}

int cmd_fit(const Globals& g, const std::string& data_path, const std::string& model_out, std::string metrics_out)
{
    std::string text;
    const ModelConfig cfg = load_config(g, &text);
    const Dataset data = read_dataset_file(data_path);
    if (metrics_out.empty()) {
        metrics_out = model_out + ".metrics.jsonl";
    }
    auto metrics = open_out(metrics_out);
    FitOptions options;
    options.on_epoch = [&](const EpochMetrics& m) {
        metrics << fmt::format(R"({{"epoch":{},"loss":{},"rmse":{},"mae":{}}})", m.epoch, m.loss, m.rmse, m.mae)
                << '\n';
    };
    FittedModel fitted = fit(data, cfg, options);
    fitted.config_fingerprint = config_fingerprint(text);
    save_model_file(model_out, fitted);
    if (!g.quiet) {
        const auto& last = fitted.history.back();
        std::cout << fmt::format("fitted {} epochs (batch {}, lr {:.4g}): loss {:.6g}, rmse {:.6g}, mae {:.6g}\n",
                                 fitted.epochs, fitted.batch_size, fitted.learning_rate, last.loss, last.rmse,
                                 last.mae);
    }
    return Ok;
}

int cmd_predict(const Globals& g, const std::string& model_path, const std::string& data_path,
                const std::string& out_path, bool decompose, const std::string& plot_path, std::size_t periods)
{
    const FittedModel fitted = load_model_file(model_path);
    Dataset data = read_dataset_file(data_path, false);
    if (periods > 0) {
        data = data.extend_future(periods);
    }
    const ForecastFrame frame = predict(fitted, data, {decompose || !plot_path.empty(), Exec::Parallel});
    auto out = open_out(out_path);
    if (decompose) {
        write_forecast(out, frame);
    } else {
        // only actuals and forecasts
        ForecastFrame slim;
        slim.ds = frame.ds;
        for (std::size_t c = 0; c < frame.columns.size(); ++c) {
            if (frame.columns[c] == "y" || frame.columns[c].starts_with("yhat")) {
                slim.columns.push_back(frame.columns[c]);
                slim.values.push_back(frame.values[c]);
            }
        }
        write_forecast(out, slim);
    }
    if (!plot_path.empty()) {
        auto plot = open_out(plot_path);
        write_plot_data(plot, frame);
    }
    if (!g.quiet) {
        std::cout << fmt::format("wrote {} rows to {}\n", frame.rows(), out_path);
    }
    return Ok;
}

int cmd_backtest(const Globals& g, const std::string& data_path, const std::string& horizons_text,
                 const std::string& report_path, BacktestOptions options)
{
    std::string text;
    const ModelConfig cfg = load_config(g, &text);
    const Dataset data = read_dataset_file(data_path);
    const auto horizons = parse_horizons(horizons_text);
    const BacktestReport report = run_backtest(data, cfg, horizons, options);
    if (!report_path.empty()) {
        auto out = open_out(report_path);
        write_report(out, report);
    }
    if (!g.quiet) {
        print_summary_table(std::cout, report);
    }
    return Ok;
}

int cmd_synth(const Globals& g, const std::string& scenario, const std::string& out_dir, SynthOptions options)
{
    const ScenarioDef& def = find_scenario(scenario);
    options.seed = g.seed.value_or(0);
    const auto files = write_scenario(def, options, out_dir);
    if (!g.quiet) {
        std::cout << fmt::format("wrote {} series of {} rows to {}\n", files.size(), options.length, out_dir);
    }
    return Ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decomposable time-series forecasting"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Model config file (INI)");
    app.add_option("--seed", g.seed, "Random seed (overrides the config)");
    app.add_flag("--quiet", g.quiet, "Only print errors");

    std::string data_path, model_path, out_path, metrics_path, plot_path, horizons = "1", scenario;
    std::size_t periods = 0;
    bool decompose = false;

    auto* fit_cmd = app.add_subcommand("fit", "Fit a model and save it");
    fit_cmd->fallthrough();
    fit_cmd->add_option("data", data_path, "Training CSV (ds, y, ...)")->required();
    fit_cmd->add_option("-o,--out", model_path, "Model file to write")->required();
    fit_cmd->add_option("--metrics", metrics_path, "Per-epoch metrics (JSON lines); default <out>.metrics.jsonl");

    auto* predict_cmd = app.add_subcommand("predict", "Forecast with a saved model");
    predict_cmd->fallthrough();
    predict_cmd->add_option("model", model_path, "Model file")->required();
    predict_cmd->add_option("data", data_path, "CSV with ds, history y and regressor columns")->required();
    predict_cmd->add_option("-o,--out", out_path, "Forecast CSV to write")->required();
    predict_cmd->add_flag("--decompose", decompose, "Include component columns");
    predict_cmd->add_option("--plot-data", plot_path, "Long-format (ds, component, value) file");
    predict_cmd->add_option("--periods", periods, "Append this many future rows");

    BacktestOptions bt;
    bool no_timing = false;
    bool no_model = false;
    auto* backtest_cmd = app.add_subcommand("backtest", "Expanding-origin backtest");
    backtest_cmd->fallthrough();
    backtest_cmd->add_option("data", data_path, "Series CSV")->required();
    backtest_cmd->add_option("--horizons", horizons, "Comma separated, 'inf' for the whole test fold");
    backtest_cmd->add_option("-o,--report", out_path, "Report file to write");
    backtest_cmd->add_option("--folds", bt.folds, "Number of folds");
    backtest_cmd->add_option("--name", bt.model_name, "Model label in the report");
    backtest_cmd->add_flag("--naive", bt.include_naive, "Also score the naive reference model");
    backtest_cmd->add_flag("--naive-only", no_model, "Score only the naive reference model");
    backtest_cmd->add_flag("--no-timing", no_timing, "Write zero timings (byte-stable reports)");

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic benchmark scenario");
    synth_cmd->fallthrough();
    synth_cmd->add_option("scenario", scenario, "S-TS, S-EF, S-TSEF, S-mTSEF, S-AL, S-TSAL or S-TSEFAL")->required();
    synth_cmd->add_option("-o,--out", out_path, "Output directory")->required();
    synth_cmd->add_option("--length", synth.length, "Rows per series");
    synth_cmd->add_option("--series", synth.series, "Independent series");
    synth_cmd->add_option("--noise", synth.noise_sigma, "Noise sigma on the [0, 1] aggregate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return BadInput;
    }

    // diagnostics go to stderr so stdout stays clean for tables
    spdlog::set_default_logger(spdlog::stderr_color_st("nprophet"));
    spdlog::set_level(g.quiet ? spdlog::level::err : spdlog::level::warn);
    try {
        if (*fit_cmd) {
            return cmd_fit(g, data_path, model_path, metrics_path);
        }
        if (*predict_cmd) {
            return cmd_predict(g, model_path, data_path, out_path, decompose, plot_path, periods);
        }
        if (*backtest_cmd) {
            bt.timing = !no_timing;
            if (no_model) {
                bt.include_model = false;
                bt.include_naive = true;
            }
            return cmd_backtest(g, data_path, horizons, out_path, bt);
        }
        if (*synth_cmd) {
            return cmd_synth(g, scenario, out_path, synth);
        }
    } catch (const ParseError& e) {
        spdlog::error("{}", e.what());
        return BadInput;
    } catch (const InvalidChangepoint& e) {
        spdlog::error("{}", e.what());
        return BadInput;
    } catch (const UnknownCountry& e) {
        spdlog::error("{}", e.what());
        return BadInput;
    } catch (const InsufficientData& e) {
        spdlog::error("{}", e.what());
        return TooLittleData;
    } catch (const NonFiniteGradient& e) {
        spdlog::error("training diverged: {}", e.what());
        return Diverged;
    } catch (const DivergedTest& e) {
        spdlog::error("training diverged: {}", e.what());
        return Diverged;
    } catch (const MissingRegressor& e) {
        spdlog::error("{}", e.what());
        return NoRegressor;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return Failure;
    }
    return Failure;
}
