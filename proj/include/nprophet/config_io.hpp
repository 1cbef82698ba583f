#pragma once

#include "nprophet/config.hpp"

#include <filesystem>
#include <string>

namespace nprophet {

/// INI-style config. Sections: [model], [trend], [seasonality],
/// [seasonality.<name>], [events.<name>], [holidays], [ar],
/// [regressors.future.<name>], [regressors.lagged.<name>], [train].
/// Lists are comma separated. Unknown sections or keys raise ParseError.
ModelConfig parse_config(const std::string& text);
ModelConfig load_config_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

} // namespace nprophet
