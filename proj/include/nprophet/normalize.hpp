#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nprophet {

enum class NormalizeMode { Auto, Off, MinMax, Standardize, Soft, Soft1 };

NormalizeMode parse_normalize_mode(std::string_view name);
std::string to_string(NormalizeMode mode);

/// Affine map x' = (x - shift) / scale. `mode` is never Auto once fitted.
struct NormalizationState {
    NormalizeMode mode = NormalizeMode::Off;
    double shift = 0.0;
    double scale = 1.0;

    double apply(double x) const { return (x - shift) / scale; }
    double invert(double z) const { return z * scale + shift; }

    std::vector<double> apply(std::span<const double> xs) const;
    std::vector<double> invert(std::span<const double> zs) const;
};

/// Linear interpolation between order statistics; NaNs are ignored.
double quantile(std::span<const double> values, double q);

/// True when every observed value is 0 or 1.
bool is_binary(std::span<const double> values);

/// Fits the state for `mode` on the observed (non-NaN) values. Throws
/// DegenerateScale when the scale denominator is zero and InsufficientData
/// when nothing is observed.
NormalizationState fit_normalization(std::span<const double> values, NormalizeMode mode);

/// fit_normalization, falling back to Off with a warning on a degenerate scale.
NormalizationState fit_normalization_or_off(std::span<const double> values, NormalizeMode mode,
                                            std::string_view what);

} // namespace nprophet
