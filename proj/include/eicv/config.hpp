#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eicv/scorer.hpp"
#include "eicv/tag_expander.hpp"

namespace eicv {

struct ProviderSettings {
  std::string url = "https://api.datamuse.com";
  int timeout_ms = 5000;
};

struct EngineConfig {
  ClassifyOptions classify;
  ExpandOptions expand;
  ProviderSettings provider;
};

// Applies `key = value` lines on top of the defaults. Blank lines and '#'
// comments are ignored. Unknown keys, unparsable numbers, and an invalid
// ScoreConfig are Error{kValidation}.
EngineConfig parse_config(std::string_view text);
EngineConfig load_config(const std::filesystem::path& path);

}  // namespace eicv
