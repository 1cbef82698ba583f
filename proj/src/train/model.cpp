#include "nprophet/model.hpp"

#include "nprophet/penalty.hpp"

#include <algorithm>
#include <random>

namespace nprophet {

Model Model::create(ModelSpec spec, std::uint64_t seed)
{
    Model m;
    m.layout = make_layout(spec);
    m.spec = std::move(spec);
    m.params.assign(m.layout.total, 0.0);
    std::mt19937_64 rng(seed);
    if (m.spec.has_ar()) {
        init_arnet(m.spec.ar, std::span(m.params).subspan(m.layout.ar, m.spec.ar.param_count()), rng);
    }
    for (std::size_t c = 0; c < m.spec.lagged.size(); ++c) {
        const auto& shape = m.spec.lagged[c].shape;
        init_arnet(shape, std::span(m.params).subspan(m.layout.lagged[c], shape.param_count()), rng);
    }
    return m;
}

TrendParams Model::trend() const
{
    TrendParams p;
    p.rho0 = params[layout.offset];
    if (spec.trend_enabled) {
        p.delta0 = params[layout.rate];
        p.changepoints = spec.changepoints;
        p.delta.assign(params.begin() + static_cast<std::ptrdiff_t>(layout.deltas),
                       params.begin() + static_cast<std::ptrdiff_t>(layout.deltas + layout.n_deltas));
    }
    return p;
}

double Model::trend_at(double t) const
{
    if (!spec.trend_enabled) {
        return params[layout.offset];
    }
    return trend_eval(t, params[layout.rate], params[layout.offset], spec.changepoints,
                      std::span(params).subspan(layout.deltas, layout.n_deltas));
}

std::span<const double> Model::seasonality_coefficients(std::size_t k) const
{
    return std::span(params).subspan(layout.seasonality[k], spec.seasonalities[k].coefficient_count());
}

std::span<const double> Model::event_weights(std::size_t e) const
{
    return std::span(params).subspan(layout.events[e], layout.event_widths[e]);
}

std::span<const double> Model::ar_weights() const
{
    if (!spec.has_ar()) {
        return {};
    }
    return std::span(params).subspan(layout.ar, spec.ar.param_count());
}

std::span<const double> Model::lagged_weights(std::size_t c) const
{
    return std::span(params).subspan(layout.lagged[c], spec.lagged[c].shape.param_count());
}

SampleScratch::SampleScratch(const ModelSpec& spec)
    : trend(spec.n_forecasts)
    , mult(spec.n_forecasts)
    , ar_out(spec.n_forecasts)
    , ar_acts(spec.ar.activation_count())
    , d_yhat(spec.n_forecasts)
{
    std::size_t widest = spec.ar.scratch_count();
    for (const auto& l : spec.lagged) {
        lag_out.emplace_back(spec.n_forecasts);
        lag_acts.emplace_back(l.shape.activation_count());
        widest = std::max(widest, l.shape.scratch_count());
    }
    net_scratch.resize(widest);
}

namespace {

double dot(const double* a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

} // namespace

void forward_sample(const Model& model, const SampleSet& set, std::size_t s, std::span<double> yhat,
                    SampleScratch& scratch)
{
    const auto& spec = model.spec;
    const auto& layout = model.layout;
    const auto& params = model.params;
    const auto& feat = set.features;
    const std::size_t h = set.n_forecasts;

    if (spec.has_ar()) {
        arnet_forward(spec.ar, std::span(params).subspan(layout.ar, spec.ar.param_count()),
                      set.ar_input(s), scratch.ar_out, scratch.ar_acts);
    }
    for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
        const auto& shape = spec.lagged[c].shape;
        arnet_forward(shape, std::span(params).subspan(layout.lagged[c], shape.param_count()),
                      set.covariate_input(c, s), scratch.lag_out[c], scratch.lag_acts[c]);
    }

    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t r = set.row(s, i);
        const double trend = model.trend_at(feat.time[r]);
        double add = 0.0;
        double mult = 0.0;

        const auto fourier = feat.fourier_row(r);
        std::size_t off = 0;
        for (std::size_t k = 0; k < spec.seasonalities.size(); ++k) {
            const std::size_t width = spec.seasonalities[k].coefficient_count();
            const double v = dot(params.data() + layout.seasonality[k], fourier.subspan(off, width));
            (spec.seasonalities[k].mode == ComponentMode::Multiplicative ? mult : add) += v;
            off += width;
        }

        if (feat.event_width > 0) {
            const auto row = feat.event_row(r);
            std::size_t event_col = 0;
            for (std::size_t e = 0; e < layout.event_widths.size(); ++e) {
                const double v = dot(params.data() + layout.events[e], row.subspan(event_col, layout.event_widths[e]));
                (layout.event_modes[e] == ComponentMode::Multiplicative ? mult : add) += v;
                event_col += layout.event_widths[e];
            }
        }

        const auto fut = feat.future_row(r);
        for (std::size_t f = 0; f < spec.future_regressors.size(); ++f) {
            const double v = params[layout.future[f]] * fut[f];
            (spec.future_regressors[f].mode == ComponentMode::Multiplicative ? mult : add) += v;
        }

        double value = trend + add + trend * mult;
        if (spec.has_ar()) {
            value += scratch.ar_out[i];
        }
        for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
            value += scratch.lag_out[c][i];
        }
        scratch.trend[i] = trend;
        scratch.mult[i] = mult;
        yhat[i] = value;
    }
}

void backward_sample(const Model& model, const SampleSet& set, std::size_t s,
                     std::span<const double> d_yhat, std::span<double> grad, SampleScratch& scratch)
{
    const auto& spec = model.spec;
    const auto& layout = model.layout;
    const auto& params = model.params;
    const auto& feat = set.features;
    const std::size_t h = set.n_forecasts;

    for (std::size_t i = 0; i < h; ++i) {
        const double g = d_yhat[i];
        if (g == 0.0) {
            continue;
        }
        const std::size_t r = set.row(s, i);
        const double t = feat.time[r];
        const double trend = scratch.trend[i];
        const double g_trend = g * (1.0 + scratch.mult[i]);

        grad[layout.offset] += g_trend;
        if (spec.trend_enabled) {
            grad[layout.rate] += g_trend * t;
            for (std::size_t j = 0; j < layout.n_deltas; ++j) {
                const double c = spec.changepoints[j];
                if (t >= c) {
                    grad[layout.deltas + j] += g_trend * (t - c);
                }
            }
        }

        const auto fourier = feat.fourier_row(r);
        std::size_t off = 0;
        for (std::size_t k = 0; k < spec.seasonalities.size(); ++k) {
            const std::size_t width = spec.seasonalities[k].coefficient_count();
            const double factor = spec.seasonalities[k].mode == ComponentMode::Multiplicative ? g * trend : g;
            double* gk = grad.data() + layout.seasonality[k];
            for (std::size_t j = 0; j < width; ++j) {
                gk[j] += factor * fourier[off + j];
            }
            off += width;
        }

        if (feat.event_width > 0) {
            const auto row = feat.event_row(r);
            std::size_t col = 0;
            for (std::size_t e = 0; e < layout.event_widths.size(); ++e) {
                const double factor = layout.event_modes[e] == ComponentMode::Multiplicative ? g * trend : g;
                double* ge = grad.data() + layout.events[e];
                for (std::size_t j = 0; j < layout.event_widths[e]; ++j) {
                    ge[j] += factor * row[col + j];
                }
                col += layout.event_widths[e];
            }
        }

        const auto fut = feat.future_row(r);
        for (std::size_t f = 0; f < spec.future_regressors.size(); ++f) {
            const double factor =
                spec.future_regressors[f].mode == ComponentMode::Multiplicative ? g * trend : g;
            grad[layout.future[f]] += factor * fut[f];
        }
    }

    if (spec.has_ar()) {
        arnet_backward(spec.ar, std::span(params).subspan(layout.ar, spec.ar.param_count()),
                       set.ar_input(s), scratch.ar_acts, d_yhat,
                       grad.subspan(layout.ar, spec.ar.param_count()), scratch.net_scratch);
    }
    for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
        const auto& shape = spec.lagged[c].shape;
        arnet_backward(shape, std::span(params).subspan(layout.lagged[c], shape.param_count()),
                       set.covariate_input(c, s), scratch.lag_acts[c], d_yhat,
                       grad.subspan(layout.lagged[c], shape.param_count()), scratch.net_scratch);
    }
}

double TimeComponents::total() const
{
    double sum = trend;
    for (double v : seasonality) sum += v;
    for (double v : events) sum += v;
    for (double v : future) sum += v;
    return sum;
}

TimeComponents time_components(const Model& model, const FeatureTable& features, std::size_t row)
{
    const auto& spec = model.spec;
    const auto& layout = model.layout;
    TimeComponents out;
    out.trend = model.trend_at(features.time[row]);

    const auto fourier = features.fourier_row(row);
    std::size_t off = 0;
    for (std::size_t k = 0; k < spec.seasonalities.size(); ++k) {
        const std::size_t width = spec.seasonalities[k].coefficient_count();
        const double v = dot(model.params.data() + layout.seasonality[k], fourier.subspan(off, width));
        out.seasonality.push_back(spec.seasonalities[k].mode == ComponentMode::Multiplicative ? out.trend * v : v);
        off += width;
    }
    if (features.event_width > 0) {
        const auto ev = features.event_row(row);
        std::size_t col = 0;
        for (std::size_t e = 0; e < layout.event_widths.size(); ++e) {
            const double v = dot(model.params.data() + layout.events[e], ev.subspan(col, layout.event_widths[e]));
            out.events.push_back(layout.event_modes[e] == ComponentMode::Multiplicative ? out.trend * v : v);
            col += layout.event_widths[e];
        }
    } else {
        out.events.assign(layout.events.size(), 0.0);
    }
    const auto fut = features.future_row(row);
    for (std::size_t f = 0; f < spec.future_regressors.size(); ++f) {
        const double v = model.params[layout.future[f]] * fut[f];
        out.future.push_back(spec.future_regressors[f].mode == ComponentMode::Multiplicative ? out.trend * v : v);
    }
    return out;
}

LagComponents lag_components(const Model& model, const SampleSet& set, std::size_t s)
{
    const auto& spec = model.spec;
    LagComponents out;
    out.ar.assign(spec.n_forecasts, 0.0);
    if (spec.has_ar()) {
        std::vector<double> acts(spec.ar.activation_count());
        arnet_forward(spec.ar, model.ar_weights(), set.ar_input(s), out.ar, acts);
    }
    for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
        std::vector<double> y(spec.n_forecasts);
        std::vector<double> acts(spec.lagged[c].shape.activation_count());
        arnet_forward(spec.lagged[c].shape, model.lagged_weights(c), set.covariate_input(c, s), y, acts);
        out.lagged.push_back(std::move(y));
    }
    return out;
}

double regularization(const Model& model, double ramp, std::span<double> grad)
{
    if (ramp <= 0.0) {
        return 0.0;
    }
    const auto& spec = model.spec;
    const auto& layout = model.layout;
    std::span<const double> params = model.params;
    const bool with_grad = !grad.empty();
    double total = 0.0;

    auto log_term = [&](std::size_t begin, std::size_t count, double strength, double eps) {
        if (strength <= 0.0 || count == 0) {
            return;
        }
        const double scale = strength * ramp;
        total += scale * log_penalty(params.subspan(begin, count), eps, 1.0);
        if (with_grad) {
            log_penalty_grad(params.subspan(begin, count), eps, 1.0, scale, grad.subspan(begin, count));
        }
    };
    auto sparsity_term = [&](std::size_t begin, std::size_t count, double strength, PenaltyKind kind) {
        if (strength <= 0.0 || count == 0) {
            return;
        }
        if (kind == PenaltyKind::Default) {
            log_term(begin, count, strength, 3.0);
            return;
        }
        const double scale = strength * ramp;
        total += scale * arnet_penalty(params.subspan(begin, count), 3.0, 3.0);
        if (with_grad) {
            arnet_penalty_grad(params.subspan(begin, count), 3.0, 3.0, scale, grad.subspan(begin, count));
        }
    };

    if (spec.trend_enabled) {
        log_term(layout.deltas, layout.n_deltas, spec.changepoint_reg, 1.0);
    }
    for (std::size_t k = 0; k < spec.seasonalities.size(); ++k) {
        log_term(layout.seasonality[k], spec.seasonalities[k].coefficient_count(), spec.seasonalities[k].reg, 1.0);
    }
    const auto& widths = layout.event_widths;
    std::size_t e = 0;
    for (const auto& ev : spec.events) {
        log_term(layout.events[e], widths[e], ev.event.reg, 1.0);
        ++e;
    }
    for (std::size_t h = 0; h < spec.holidays.size(); ++h) {
        for (std::size_t n = 0; n < spec.holiday_names[h].size(); ++n, ++e) {
            log_term(layout.events[e], widths[e], spec.holidays[h].reg, 1.0);
        }
    }
    for (std::size_t f = 0; f < spec.future_regressors.size(); ++f) {
        log_term(layout.future[f], 1, spec.future_regressors[f].reg, 1.0);
    }
    if (spec.has_ar()) {
        sparsity_term(layout.ar, spec.ar.first_layer_size(), spec.ar_sparsity, spec.ar_penalty);
    }
    for (std::size_t c = 0; c < spec.lagged.size(); ++c) {
        sparsity_term(layout.lagged[c], spec.lagged[c].shape.first_layer_size(), spec.lagged[c].sparsity,
                      spec.lagged[c].penalty);
    }
    return total;
}

} // namespace nprophet
