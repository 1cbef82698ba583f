#include "nprophet/model_io.hpp"

#include "nprophet/errors.hpp"

#include <chrono>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>

namespace nprophet {

using nlohmann::json;

std::string config_fingerprint(std::string_view text)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", hash);
}

namespace {

json to_json(const NormalizationState& s)
{
    return {{"mode", to_string(s.mode)}, {"shift", s.shift}, {"scale", s.scale}};
}

NormalizationState norm_from_json(const json& j)
{
    return {parse_normalize_mode(j.at("mode").get<std::string>()), j.at("shift").get<double>(),
            j.at("scale").get<double>()};
}

json to_json(const ArNetShape& s)
{
    return {{"n_lags", s.n_lags}, {"n_outputs", s.n_outputs}, {"hidden", s.hidden}};
}

ArNetShape shape_from_json(const json& j)
{
    ArNetShape s;
    s.n_lags = j.at("n_lags").get<std::size_t>();
    s.n_outputs = j.at("n_outputs").get<std::size_t>();
    s.hidden = j.at("hidden").get<std::vector<std::size_t>>();
    return s;
}

std::vector<std::string> dates_to_json(const std::vector<Date>& dates)
{
    std::vector<std::string> out;
    for (auto d : dates) {
        out.push_back(format_timestamp(Timestamp{d}));
    }
    return out;
}

std::vector<Date> dates_from_json(const json& j)
{
    std::vector<Date> out;
    for (const auto& s : j) {
        out.push_back(std::chrono::floor<std::chrono::days>(parse_timestamp(s.get<std::string>())));
    }
    return out;
}

json spec_to_json(const ModelSpec& spec)
{
    json j;
    j["n_forecasts"] = spec.n_forecasts;
    j["impute"] = spec.impute;
    j["impute_options"] = {{"linear_limit", spec.impute_options.linear_limit},
                           {"rolling_limit", spec.impute_options.rolling_limit},
                           {"rolling_window", spec.impute_options.rolling_window},
                           {"abort_limit", spec.impute_options.abort_limit}};
    j["trend"] = {{"enabled", spec.trend_enabled},
                  {"changepoints", spec.changepoints},
                  {"changepoint_reg", spec.changepoint_reg}};
    j["seasonalities"] = json::array();
    for (const auto& s : spec.seasonalities) {
        j["seasonalities"].push_back({{"name", s.name},
                                      {"period_days", s.period_days},
                                      {"fourier_order", s.fourier_order},
                                      {"mode", to_string(s.mode)},
                                      {"reg", s.reg}});
    }
    j["events"] = json::array();
    for (const auto& e : spec.events) {
        j["events"].push_back({{"name", e.event.name},
                               {"dates", dates_to_json(e.event.dates)},
                               {"lower_window", e.event.lower_window},
                               {"upper_window", e.event.upper_window},
                               {"mode", to_string(e.event.mode)},
                               {"reg", e.event.reg},
                               {"column", e.column}});
    }
    j["holidays"] = json::array();
    for (std::size_t h = 0; h < spec.holidays.size(); ++h) {
        const auto& c = spec.holidays[h];
        j["holidays"].push_back({{"country", c.country},
                                 {"lower_window", c.lower_window},
                                 {"upper_window", c.upper_window},
                                 {"mode", to_string(c.mode)},
                                 {"reg", c.reg},
                                 {"names", spec.holiday_names[h]}});
    }
    j["future_regressors"] = json::array();
    for (const auto& f : spec.future_regressors) {
        j["future_regressors"].push_back(
            {{"name", f.name}, {"mode", to_string(f.mode)}, {"normalize", to_string(f.normalize)}, {"reg", f.reg}});
    }
    j["ar"] = {{"shape", to_json(spec.ar)}, {"sparsity", spec.ar_sparsity}, {"penalty", to_string(spec.ar_penalty)}};
    j["lagged"] = json::array();
    for (const auto& l : spec.lagged) {
        j["lagged"].push_back({{"name", l.name},
                               {"shape", to_json(l.shape)},
                               {"sparsity", l.sparsity},
                               {"penalty", to_string(l.penalty)},
                               {"normalize", to_string(l.normalize)}});
    }
    return j;
}

ModelSpec spec_from_json(const json& j)
{
    ModelSpec spec;
    spec.n_forecasts = j.at("n_forecasts").get<std::size_t>();
    spec.impute = j.at("impute").get<bool>();
    const auto& io = j.at("impute_options");
    spec.impute_options.linear_limit = io.at("linear_limit").get<std::size_t>();
    spec.impute_options.rolling_limit = io.at("rolling_limit").get<std::size_t>();
    spec.impute_options.rolling_window = io.at("rolling_window").get<std::size_t>();
    spec.impute_options.abort_limit = io.at("abort_limit").get<std::size_t>();
    const auto& t = j.at("trend");
    spec.trend_enabled = t.at("enabled").get<bool>();
    spec.changepoints = t.at("changepoints").get<std::vector<double>>();
    spec.changepoint_reg = t.at("changepoint_reg").get<double>();
    for (const auto& s : j.at("seasonalities")) {
        spec.seasonalities.push_back({s.at("name").get<std::string>(), s.at("period_days").get<double>(),
                                      s.at("fourier_order").get<std::size_t>(),
                                      parse_component_mode(s.at("mode").get<std::string>()),
                                      s.at("reg").get<double>()});
    }
    for (const auto& e : j.at("events")) {
        EventConfig ec;
        ec.event.name = e.at("name").get<std::string>();
        ec.event.dates = dates_from_json(e.at("dates"));
        ec.event.lower_window = e.at("lower_window").get<int>();
        ec.event.upper_window = e.at("upper_window").get<int>();
        ec.event.mode = parse_component_mode(e.at("mode").get<std::string>());
        ec.event.reg = e.at("reg").get<double>();
        ec.column = e.at("column").get<std::string>();
        spec.events.push_back(std::move(ec));
    }
    for (const auto& h : j.at("holidays")) {
        HolidayConfig c;
        c.country = h.at("country").get<std::string>();
        c.lower_window = h.at("lower_window").get<int>();
        c.upper_window = h.at("upper_window").get<int>();
        c.mode = parse_component_mode(h.at("mode").get<std::string>());
        c.reg = h.at("reg").get<double>();
        spec.holidays.push_back(c);
        spec.holiday_names.push_back(h.at("names").get<std::vector<std::string>>());
    }
    for (const auto& f : j.at("future_regressors")) {
        spec.future_regressors.push_back({f.at("name").get<std::string>(),
                                          parse_component_mode(f.at("mode").get<std::string>()),
                                          parse_normalize_mode(f.at("normalize").get<std::string>()),
                                          f.at("reg").get<double>()});
    }
    const auto& ar = j.at("ar");
    spec.ar = shape_from_json(ar.at("shape"));
    spec.ar_sparsity = ar.at("sparsity").get<double>();
    spec.ar_penalty = parse_penalty_kind(ar.at("penalty").get<std::string>());
    for (const auto& l : j.at("lagged")) {
        spec.lagged.push_back({l.at("name").get<std::string>(), shape_from_json(l.at("shape")),
                               l.at("sparsity").get<double>(), parse_penalty_kind(l.at("penalty").get<std::string>()),
                               parse_normalize_mode(l.at("normalize").get<std::string>())});
    }
    return spec;
}

} // namespace

void save_model(std::ostream& out, const FittedModel& fitted)
{
    const auto& tf = fitted.transform;
    json j;
    j["format"] = "nprophet-model";
    j["version"] = kModelFormatVersion;
    j["config_fingerprint"] = fitted.config_fingerprint;
    j["spec"] = spec_to_json(fitted.model.spec);
    json transform;
    transform["y"] = to_json(tf.y);
    transform["future"] = json::array();
    for (const auto& s : tf.future) {
        transform["future"].push_back(to_json(s));
    }
    transform["covariates"] = json::array();
    for (const auto& s : tf.covariates) {
        transform["covariates"].push_back(to_json(s));
    }
    transform["time_start"] = format_timestamp(tf.time.start);
    transform["time_span_seconds"] = tf.time.span_seconds;
    transform["frequency_seconds"] = tf.frequency.count();
    j["transform"] = transform;
    j["training"] = {{"loss", to_string(fitted.loss.kind)},
                     {"huber_beta", fitted.loss.beta},
                     {"learning_rate", fitted.learning_rate},
                     {"batch_size", fitted.batch_size},
                     {"epochs", fitted.epochs}};
    j["params"] = fitted.model.params;
    out << j.dump(1) << '\n';
}

void save_model_file(const std::filesystem::path& path, const FittedModel& fitted)
{
    std::ofstream out(path);
    if (!out) {
        throw Error(fmt::format("cannot write '{}'", path.string()));
    }
    save_model(out, fitted);
}

FittedModel load_model(std::istream& in)
{
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(fmt::format("model file is not valid JSON: {}", e.what()));
    }
    try {
        if (j.at("format").get<std::string>() != "nprophet-model") {
            throw ParseError("not a model file");
        }
        const int version = j.at("version").get<int>();
        if (version != kModelFormatVersion) {
            throw ParseError(fmt::format("unsupported model format version {}", version));
        }
        FittedModel fitted;
        fitted.config_fingerprint = j.at("config_fingerprint").get<std::string>();
        ModelSpec spec = spec_from_json(j.at("spec"));
        fitted.model.layout = make_layout(spec);
        fitted.model.spec = std::move(spec);
        fitted.model.params = j.at("params").get<std::vector<double>>();
        if (fitted.model.params.size() != fitted.model.layout.total) {
            throw ParseError(fmt::format("model has {} parameters, layout expects {}",
                                         fitted.model.params.size(), fitted.model.layout.total));
        }
        const auto& t = j.at("transform");
        fitted.transform.y = norm_from_json(t.at("y"));
        for (const auto& s : t.at("future")) {
            fitted.transform.future.push_back(norm_from_json(s));
        }
        for (const auto& s : t.at("covariates")) {
            fitted.transform.covariates.push_back(norm_from_json(s));
        }
        fitted.transform.time.start = parse_timestamp(t.at("time_start").get<std::string>());
        fitted.transform.time.span_seconds = t.at("time_span_seconds").get<double>();
        fitted.transform.frequency = Duration{t.at("frequency_seconds").get<std::int64_t>()};
        const auto& tr = j.at("training");
        fitted.loss.kind = parse_loss_kind(tr.at("loss").get<std::string>());
        fitted.loss.beta = tr.at("huber_beta").get<double>();
        fitted.learning_rate = tr.at("learning_rate").get<double>();
        fitted.batch_size = tr.at("batch_size").get<std::size_t>();
        fitted.epochs = tr.at("epochs").get<std::size_t>();
        return fitted;
    } catch (const json::exception& e) {
        throw ParseError(fmt::format("malformed model file: {}", e.what()));
    }
}

FittedModel load_model_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("cannot open model file '{}'", path.string()));
    }
    return load_model(in);
}

} // namespace nprophet
