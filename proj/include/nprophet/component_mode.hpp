#pragma once

#include <string>
#include <string_view>

namespace nprophet {

/// Multiplicative components are scaled by the trend at the same timestamp.
enum class ComponentMode { Additive, Multiplicative };

ComponentMode parse_component_mode(std::string_view name);
std::string to_string(ComponentMode mode);

} // namespace nprophet
