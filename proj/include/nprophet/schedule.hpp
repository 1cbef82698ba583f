#pragma once

namespace nprophet {

/// Regularization strength at `progress` in [0, 1]: zero before
/// `ramp_start`, then linear up to `strength` at the end of training.
double reg_schedule(double progress, double strength, double ramp_start = 0.5);

/// 1cycle: linear warmup from eta/100 to eta over the first 30% of training,
/// cosine annealing down to eta/5000 at the end.
double one_cycle_lr(double progress, double eta);

} // namespace nprophet
