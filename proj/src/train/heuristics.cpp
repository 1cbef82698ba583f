#include "nprophet/heuristics.hpp"

#include <algorithm>
#include <cmath>

namespace nprophet {

namespace {

// floor(log10 n) without floating point, so exact powers of ten are safe.
int decimal_exponent(std::size_t n)
{
    int e = 0;
    while (n >= 10) {
        n /= 10;
        ++e;
    }
    return e;
}

} // namespace

std::size_t batch_size_heuristic(std::size_t n)
{
    n = std::max<std::size_t>(n, 1);
    const int e = std::min(decimal_exponent(n) + 2, 20);
    const std::size_t b = std::size_t{1} << e;
    return std::min(n, std::max<std::size_t>(16, std::min<std::size_t>(256, b)));
}

std::size_t epochs_heuristic(std::size_t n)
{
    n = std::max<std::size_t>(n, 1);
    const double t = static_cast<double>(n);
    const double raw = 1000.0 * std::pow(2.0, 2.5 * std::log10(t)) / t;
    const double epochs = std::floor(raw);
    return static_cast<std::size_t>(std::clamp(epochs, 50.0, 500.0));
}

std::size_t lr_test_iterations(std::size_t n)
{
    const double x = 100.0 + 50.0 * std::log10(10.0 + static_cast<double>(n));
    return static_cast<std::size_t>(std::floor(x + 0.5));
}

} // namespace nprophet
