#include "nprophet/config_io.hpp"

#include "nprophet/errors.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <tuple>

namespace nprophet {

namespace pt = boost::property_tree;

namespace {

std::string trimmed(const std::string& s)
{
    return boost::algorithm::trim_copy(s);
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> parts;
    const std::string v = trimmed(value);
    if (v.empty()) {
        return parts;
    }
    boost::algorithm::split(parts, v, boost::algorithm::is_any_of(","));
    for (auto& p : parts) {
        boost::algorithm::trim(p);
    }
    return parts;
}

double to_double(const std::string& key, const std::string& value)
{
    const std::string v = trimmed(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError(fmt::format("'{}': expected a number, got '{}'", key, value));
    }
    return out;
}

long long to_int(const std::string& key, const std::string& value)
{
    const std::string v = trimmed(value);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError(fmt::format("'{}': expected an integer, got '{}'", key, value));
    }
    return out;
}

std::size_t to_count(const std::string& key, const std::string& value)
{
    const long long v = to_int(key, value);
    if (v < 0) {
        throw ParseError(fmt::format("'{}' must be non-negative", key));
    }
    return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& value)
{
    const std::string v = boost::algorithm::to_lower_copy(trimmed(value));
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ParseError(fmt::format("'{}': expected a boolean, got '{}'", key, value));
}

// true / false / auto
std::optional<bool> to_tristate(const std::string& key, const std::string& value)
{
    if (boost::algorithm::iequals(trimmed(value), "auto")) {
        return std::nullopt;
    }
    return to_bool(key, value);
}

std::vector<std::size_t> to_counts(const std::string& key, const std::string& value)
{
    std::vector<std::size_t> out;
    for (const auto& p : split_list(value)) {
        out.push_back(to_count(key, p));
    }
    return out;
}

// "-1,1" or a single non-negative radius
std::pair<int, int> to_window(const std::string& key, const std::string& value)
{
    const auto parts = split_list(value);
    if (parts.size() == 1) {
        const auto r = static_cast<int>(to_int(key, parts[0]));
        return {-std::abs(r), std::abs(r)};
    }
    if (parts.size() == 2) {
        return {static_cast<int>(to_int(key, parts[0])), static_cast<int>(to_int(key, parts[1]))};
    }
    throw ParseError(fmt::format("'{}': expected 'lower,upper'", key));
}

ArConfig parse_ar(const std::string& section, const pt::ptree& tree, NormalizeMode* normalize)
{
    ArConfig ar;
    for (const auto& [key, node] : tree) {
        const std::string full = section + "." + key;
        const std::string v = node.data();
        if (key == "n_lags") ar.n_lags = to_count(full, v);
        else if (key == "hidden_layers") ar.hidden_layers = to_counts(full, v);
        else if (key == "sparsity") ar.sparsity = to_double(full, v);
        else if (key == "penalty") ar.penalty = parse_penalty_kind(trimmed(v));
        else if (key == "normalize" && normalize) *normalize = parse_normalize_mode(trimmed(v));
        else throw ParseError(fmt::format("unknown key '{}'", full));
    }
    return ar;
}

void unknown(const std::string& section, const std::string& key)
{
    throw ParseError(fmt::format("unknown key '{}.{}'", section, key));
}

// The INI reader drops sections without keys; a bare [regressors.future.x]
// is meaningful, so those are re-inserted in file order.
void restore_empty_sections(const std::string& text, pt::ptree& root)
{
    std::istringstream in(text);
    std::string line;
    pt::ptree ordered;
    while (std::getline(in, line)) {
        boost::algorithm::trim(line);
        if (line.size() < 2 || line.front() != '[' || line.back() != ']') {
            continue;
        }
        const std::string name = boost::algorithm::trim_copy(line.substr(1, line.size() - 2));
        auto it = root.find(name);
        ordered.push_back({name, it == root.not_found() ? pt::ptree{} : it->second});
    }
    for (const auto& [key, node] : root) {
        if (ordered.find(key) == ordered.not_found()) {
            ordered.push_back({key, node});
        }
    }
    root.swap(ordered);
}

// "key = value   ; note" -> "key = value"; a comment marker only counts
// after whitespace, so values like "a;b" survive.
std::string strip_inline_comments(const std::string& text)
{
    std::istringstream in(text);
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        for (std::size_t i = 1; i < line.size(); ++i) {
            if ((line[i] == ';' || line[i] == '#') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
                line.erase(i);
                break;
            }
        }
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace

ModelConfig parse_config(const std::string& raw)
{
    const std::string text = strip_inline_comments(raw);
    pt::ptree root;
    try {
        std::istringstream in(text);
        pt::read_ini(in, root);
        restore_empty_sections(text, root);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(fmt::format("config line {}: {}", e.line(), e.message()));
    }

    ModelConfig cfg;
    for (const auto& [section, tree] : root) {
        if (!tree.data().empty() && tree.empty()) {
            throw ParseError(fmt::format("key '{}' outside of a section", section));
        }
        if (section == "model") {
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                if (key == "n_forecasts") cfg.n_forecasts = to_count("model.n_forecasts", v);
                else if (key == "normalize") cfg.normalize = parse_normalize_mode(trimmed(v));
                else if (key == "impute") cfg.impute = to_bool("model.impute", v);
                else unknown(section, key);
            }
        } else if (section == "trend") {
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                const std::string full = "trend." + key;
                if (key == "enabled") cfg.trend.enabled = to_bool(full, v);
                else if (key == "n_changepoints") cfg.trend.n_changepoints = to_count(full, v);
                else if (key == "changepoints") {
                    std::vector<double> cps;
                    for (const auto& p : split_list(v)) {
                        cps.push_back(to_double(full, p));
                    }
                    cfg.trend.changepoints = cps;
                } else if (key == "changepoints_range") cfg.trend.changepoints_range = to_double(full, v);
                else if (key == "changepoint_reg") cfg.trend.changepoint_reg = to_double(full, v);
                else unknown(section, key);
            }
        } else if (section == "seasonality") {
            auto& s = cfg.seasonality;
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                const std::string full = "seasonality." + key;
                if (key == "auto") s.auto_enable = to_bool(full, v);
                else if (key == "yearly") s.yearly = to_tristate(full, v);
                else if (key == "weekly") s.weekly = to_tristate(full, v);
                else if (key == "daily") s.daily = to_tristate(full, v);
                else if (key == "mode") s.mode = parse_component_mode(trimmed(v));
                else if (key == "reg") s.reg = to_double(full, v);
                else unknown(section, key);
            }
        } else if (section.starts_with("seasonality.")) {
            Seasonality s;
            s.name = section.substr(12);
            s.mode = ComponentMode::Additive;
            bool has_mode = false;
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                const std::string full = section + "." + key;
                if (key == "period_days") s.period_days = to_double(full, v);
                else if (key == "fourier_order") s.fourier_order = to_count(full, v);
                else if (key == "mode") { s.mode = parse_component_mode(trimmed(v)); has_mode = true; }
                else if (key == "reg") s.reg = to_double(full, v);
                else unknown(section, key);
            }
            if (!has_mode) {
                s.mode = cfg.seasonality.mode;
            }
            cfg.seasonality.custom.push_back(s);
        } else if (section.starts_with("events.")) {
            EventConfig e;
            e.event.name = section.substr(7);
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                const std::string full = section + "." + key;
                if (key == "dates") {
                    for (const auto& d : split_list(v)) {
                        e.event.dates.push_back(std::chrono::floor<std::chrono::days>(parse_timestamp(d)));
                    }
                } else if (key == "column") e.column = trimmed(v);
                else if (key == "window") std::tie(e.event.lower_window, e.event.upper_window) = to_window(full, v);
                else if (key == "lower_window") e.event.lower_window = static_cast<int>(to_int(full, v));
                else if (key == "upper_window") e.event.upper_window = static_cast<int>(to_int(full, v));
                else if (key == "mode") e.event.mode = parse_component_mode(trimmed(v));
                else if (key == "reg") e.event.reg = to_double(full, v);
                else unknown(section, key);
            }
            if (e.event.dates.empty() && e.column.empty()) {
                e.column = e.event.name;
            }
            cfg.events.push_back(std::move(e));
        } else if (section == "holidays") {
            HolidayConfig base;
            std::vector<std::string> countries;
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                const std::string full = "holidays." + key;
                if (key == "country" || key == "countries") countries = split_list(v);
                else if (key == "window") std::tie(base.lower_window, base.upper_window) = to_window(full, v);
                else if (key == "lower_window") base.lower_window = static_cast<int>(to_int(full, v));
                else if (key == "upper_window") base.upper_window = static_cast<int>(to_int(full, v));
                else if (key == "mode") base.mode = parse_component_mode(trimmed(v));
                else if (key == "reg") base.reg = to_double(full, v);
                else unknown(section, key);
            }
            for (const auto& c : countries) {
                HolidayConfig h = base;
                h.country = c;
                cfg.holidays.push_back(h);
            }
        } else if (section.starts_with("regressors.future.")) {
            FutureRegressorConfig f;
            f.name = section.substr(18);
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                if (key == "mode") f.mode = parse_component_mode(trimmed(v));
                else if (key == "normalize") f.normalize = parse_normalize_mode(trimmed(v));
                else if (key == "reg") f.reg = to_double(section + ".reg", v);
                else unknown(section, key);
            }
            cfg.future_regressors.push_back(f);
        } else if (section == "ar") {
            cfg.ar = parse_ar(section, tree, nullptr);
        } else if (section.starts_with("regressors.lagged.")) {
            LaggedRegressorConfig l;
            l.name = section.substr(18);
            l.net = parse_ar(section, tree, &l.normalize);
            cfg.lagged_regressors.push_back(l);
        } else if (section == "train") {
            auto& t = cfg.train;
            for (const auto& [key, node] : tree) {
                const std::string v = node.data();
                const std::string full = "train." + key;
                if (key == "loss") t.loss = parse_loss_kind(trimmed(v));
                else if (key == "huber_beta") t.huber_beta = to_double(full, v);
                else if (key == "optimizer") t.optimizer = parse_optimizer_kind(trimmed(v));
                else if (key == "learning_rate") t.learning_rate = to_double(full, v);
                else if (key == "batch_size") t.batch_size = to_count(full, v);
                else if (key == "epochs") t.epochs = to_count(full, v);
                else if (key == "seed") t.seed = static_cast<std::uint64_t>(to_count(full, v));
                else if (key == "reg_ramp_start") t.reg_ramp_start = to_double(full, v);
                else unknown(section, key);
            }
        } else {
            throw ParseError(fmt::format("unknown config section '[{}]'", section));
        }
    }
    cfg.validate();
    return cfg;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(fmt::format("cannot open '{}'", path.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ModelConfig load_config_file(const std::filesystem::path& path)
{
    return parse_config(read_text_file(path));
}

} // namespace nprophet
