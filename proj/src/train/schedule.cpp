#include "nprophet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nprophet {

namespace {
constexpr double kPeakAt = 0.3;
constexpr double kInitialDiv = 100.0;
constexpr double kFinalDiv = 5000.0;
} // namespace

double reg_schedule(double progress, double strength, double ramp_start)
{
    progress = std::clamp(progress, 0.0, 1.0);
    if (progress < ramp_start) {
        return 0.0;
    }
    if (ramp_start >= 1.0) {
        return strength;
    }
    return strength * (progress - ramp_start) / (1.0 - ramp_start);
}

double one_cycle_lr(double progress, double eta)
{
    progress = std::clamp(progress, 0.0, 1.0);
    const double start = eta / kInitialDiv;
    if (progress <= kPeakAt) {
        return start + (eta - start) * progress / kPeakAt;
    }
    const double end = eta / kFinalDiv;
    const double x = (progress - kPeakAt) / (1.0 - kPeakAt);
    return end + (eta - end) * 0.5 * (1.0 + std::cos(std::numbers::pi * x));
}

} // namespace nprophet
