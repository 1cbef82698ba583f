#pragma once

#include "nprophet/fit.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nprophet {

inline constexpr int kModelFormatVersion = 1;

/// FNV-1a 64-bit hash of the config text, hex encoded.
std::string config_fingerprint(std::string_view text);

/// Versioned JSON document. Doubles are written in shortest round-trip form,
/// so loading reproduces every parameter exactly.
void save_model(std::ostream& out, const FittedModel& fitted);
void save_model_file(const std::filesystem::path& path, const FittedModel& fitted);

/// Throws ParseError on malformed input or an unsupported version.
FittedModel load_model(std::istream& in);
FittedModel load_model_file(const std::filesystem::path& path);

} // namespace nprophet
