#include "nprophet/arnet.hpp"

#include "nprophet/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace nprophet {

std::size_t ArNetShape::param_count() const
{
    std::size_t n = 0;
    for (std::size_t l = 0; l < layer_count(); ++l) {
        n += layer_outputs(l) * layer_inputs(l);
        if (l < hidden.size()) {
            n += layer_outputs(l);
        }
    }
    return n;
}

std::size_t ArNetShape::activation_count() const
{
    std::size_t n = 0;
    for (auto d : hidden) {
        n += d;
    }
    return n;
}

std::size_t ArNetShape::scratch_count() const
{
    std::size_t widest = n_outputs;
    for (auto d : hidden) {
        widest = std::max(widest, d);
    }
    return 2 * widest;
}

void arnet_forward(const ArNetShape& shape, std::span<const double> weights,
                   std::span<const double> lags, std::span<double> out,
                   std::span<double> activations)
{
    if (lags.size() != shape.n_lags) {
        throw ShapeMismatch(fmt::format("AR-Net expects {} lags, got {}", shape.n_lags, lags.size()));
    }
    std::size_t w = 0;
    std::size_t act = 0;
    std::span<const double> input = lags;
    for (std::size_t l = 0; l < shape.layer_count(); ++l) {
        const std::size_t in = shape.layer_inputs(l);
        const std::size_t nout = shape.layer_outputs(l);
        const bool is_hidden = l < shape.hidden.size();
        std::span<double> dest = is_hidden ? activations.subspan(act, nout) : out.first(nout);
        for (std::size_t o = 0; o < nout; ++o) {
            const double* row = weights.data() + w + o * in;
            double z = 0.0;
            for (std::size_t i = 0; i < in; ++i) {
                z += row[i] * input[i];
            }
            dest[o] = z;
        }
        w += nout * in;
        if (is_hidden) {
            for (std::size_t o = 0; o < nout; ++o) {
                dest[o] = std::max(0.0, dest[o] + weights[w + o]);
            }
            w += nout;
            input = dest;
            act += nout;
        }
    }
}

void arnet_backward(const ArNetShape& shape, std::span<const double> weights,
                    std::span<const double> lags, std::span<const double> activations,
                    std::span<const double> d_out, std::span<double> grad,
                    std::span<double> scratch)
{
    const std::size_t n_layers = shape.layer_count();
    // weight and activation offsets per layer
    std::vector<std::size_t> w_off(n_layers);
    std::vector<std::size_t> a_off(n_layers, 0);
    std::size_t w = 0;
    std::size_t act = 0;
    for (std::size_t l = 0; l < n_layers; ++l) {
        w_off[l] = w;
        w += shape.layer_outputs(l) * shape.layer_inputs(l);
        if (l < shape.hidden.size()) {
            w += shape.layer_outputs(l);
            a_off[l] = act;
            act += shape.layer_outputs(l);
        }
    }

    const std::size_t half = scratch.size() / 2;
    std::span<double> delta = scratch.first(half);
    std::span<double> next = scratch.subspan(half, half);
    std::copy(d_out.begin(), d_out.end(), delta.begin());

    for (std::size_t li = n_layers; li-- > 0;) {
        const std::size_t in = shape.layer_inputs(li);
        const std::size_t nout = shape.layer_outputs(li);
        std::span<const double> input =
            li == 0 ? lags : activations.subspan(a_off[li - 1], shape.hidden[li - 1]);
        double* gw = grad.data() + w_off[li];
        for (std::size_t o = 0; o < nout; ++o) {
            const double d = delta[o];
            if (d == 0.0) {
                continue;
            }
            for (std::size_t i = 0; i < in; ++i) {
                gw[o * in + i] += d * input[i];
            }
        }
        if (li < shape.hidden.size()) {
            double* gb = gw + nout * in;
            for (std::size_t o = 0; o < nout; ++o) {
                gb[o] += delta[o];
            }
        }
        if (li == 0) {
            break;
        }
        const double* wl = weights.data() + w_off[li];
        for (std::size_t i = 0; i < in; ++i) {
            double s = 0.0;
            if (input[i] > 0.0) {
                for (std::size_t o = 0; o < nout; ++o) {
                    s += wl[o * in + i] * delta[o];
                }
            }
            next[i] = s;
        }
        std::swap(delta, next);
    }
}

std::vector<double> lag_importance(const ArNetShape& shape, std::span<const double> weights)
{
    const std::size_t rows = shape.layer_outputs(0);
    std::vector<double> importance(shape.n_lags, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < shape.n_lags; ++j) {
            importance[j] += std::abs(weights[r * shape.n_lags + j]);
        }
    }
    return importance;
}

void init_arnet(const ArNetShape& shape, std::span<double> weights, std::mt19937_64& rng)
{
    std::fill(weights.begin(), weights.end(), 0.0);
    if (shape.linear()) {
        return;
    }
    std::size_t w = 0;
    for (std::size_t l = 0; l < shape.layer_count(); ++l) {
        const std::size_t in = shape.layer_inputs(l);
        const std::size_t nout = shape.layer_outputs(l);
        const double bound = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(in, 1)));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (std::size_t k = 0; k < nout * in; ++k) {
            weights[w + k] = dist(rng);
        }
        w += nout * in;
        if (l < shape.hidden.size()) {
            w += nout; // biases stay zero
        }
    }
}

ArNet::ArNet(ArNetShape shape)
    : shape_(std::move(shape))
    , weights_(shape_.param_count(), 0.0)
{
}

std::vector<double> ArNet::forward(std::span<const double> lags) const
{
    std::vector<double> out(shape_.n_outputs);
    std::vector<double> acts(shape_.activation_count());
    arnet_forward(shape_, weights_, lags, out, acts);
    return out;
}

} // namespace nprophet
