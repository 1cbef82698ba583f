#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace nprophet {

/// Feed-forward map from p lags to h additive effects. No hidden layers is
/// the classic linear AR(p) per forecast step: no bias, no activation.
/// Hidden layers use ReLU and biases; the output layer has neither.
///
/// Weights are stored layer by layer: W_l (out x in, row-major) followed by
/// the bias b_l for hidden layers only.
struct ArNetShape {
    std::size_t n_lags = 0;
    std::size_t n_outputs = 1;
    std::vector<std::size_t> hidden;

    bool linear() const { return hidden.empty(); }
    std::size_t layer_count() const { return hidden.size() + 1; }
    std::size_t layer_inputs(std::size_t layer) const { return layer == 0 ? n_lags : hidden[layer - 1]; }
    std::size_t layer_outputs(std::size_t layer) const
    {
        return layer < hidden.size() ? hidden[layer] : n_outputs;
    }
    std::size_t param_count() const;
    std::size_t activation_count() const;
    std::size_t scratch_count() const;
    /// Entries of W (linear) or W_1 (deep); the target of sparsity penalties.
    std::size_t first_layer_size() const { return layer_outputs(0) * n_lags; }
};

/// Computes `out` (h values) from `lags` = (x_{t-1}, ..., x_{t-p}). Hidden
/// activations are written to `activations` for a later backward pass.
/// Throws ShapeMismatch when the input length differs from p.
void arnet_forward(const ArNetShape& shape, std::span<const double> weights,
                   std::span<const double> lags, std::span<double> out,
                   std::span<double> activations);

/// Accumulates d(loss)/d(weights) into `grad` given d(loss)/d(out).
void arnet_backward(const ArNetShape& shape, std::span<const double> weights,
                    std::span<const double> lags, std::span<const double> activations,
                    std::span<const double> d_out, std::span<double> grad,
                    std::span<double> scratch);

/// Column-wise sums of |W_1| (|W| when linear): relative importance of each lag.
std::vector<double> lag_importance(const ArNetShape& shape, std::span<const double> weights);

/// Linear nets start at zero. Deep nets draw every weight uniformly from
/// [-1/sqrt(fan_in), 1/sqrt(fan_in)] with zero biases.
void init_arnet(const ArNetShape& shape, std::span<double> weights, std::mt19937_64& rng);

/// Owning AR-Net parameter set.
class ArNet {
public:
    explicit ArNet(ArNetShape shape);

    const ArNetShape& shape() const { return shape_; }
    std::span<double> weights() { return weights_; }
    std::span<const double> weights() const { return weights_; }
    std::span<double> first_layer() { return std::span(weights_).first(shape_.first_layer_size()); }
    std::span<const double> first_layer() const
    {
        return std::span(weights_).first(shape_.first_layer_size());
    }

    std::vector<double> forward(std::span<const double> lags) const;
    std::vector<double> importance() const { return lag_importance(shape_, weights_); }

private:
    ArNetShape shape_;
    std::vector<double> weights_;
};

/// A lagged regressor module is an AR-Net fed with covariate history.
inline std::vector<double> lagged_reg_forward(const ArNet& net, std::span<const double> covariate_lags)
{
    return net.forward(covariate_lags);
}

} // namespace nprophet
