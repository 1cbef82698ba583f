#pragma once

#include <cstddef>

namespace nprophet {

/// min(T, max(16, min(256, 2^(2 + floor(log10 T))))).
std::size_t batch_size_heuristic(std::size_t n);

/// min(500, max(50, floor(1000 * 2^(2.5 log10 T) / T))).
std::size_t epochs_heuristic(std::size_t n);

/// 100 + 50 log10(10 + T), rounded half up.
std::size_t lr_test_iterations(std::size_t n);

} // namespace nprophet
