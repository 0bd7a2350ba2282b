#include "eicv/config.hpp"

#include <charconv>
#include <functional>
#include <map>

#include "eicv/error.hpp"
#include "eicv/files.hpp"
#include "eicv/strings.hpp"

namespace eicv {

namespace {

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::kValidation,
                "config: '" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace

EngineConfig parse_config(std::string_view text) {
  EngineConfig cfg;
  ScoreConfig& score = cfg.classify.score;

  using Setter = std::function<void(std::string_view, std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"min_freq", [&](auto k, auto v) { score.min_freq = parse_number<std::size_t>(k, v); }},
      {"entity_cap", [&](auto k, auto v) { score.entity_cap = parse_number<std::size_t>(k, v); }},
      {"threshold_num", [&](auto k, auto v) { score.threshold_num = parse_number<std::uint32_t>(k, v); }},
      {"threshold_den", [&](auto k, auto v) { score.threshold_den = parse_number<std::uint32_t>(k, v); }},
      {"minimum_value", [&](auto k, auto v) { score.minimum_value = parse_number<std::size_t>(k, v); }},
      {"search.popular_cap", [&](auto k, auto v) { cfg.classify.caps.popular = parse_number<std::size_t>(k, v); }},
      {"search.recent_cap", [&](auto k, auto v) { cfg.classify.caps.recent = parse_number<std::size_t>(k, v); }},
      {"keywords.min_len", [&](auto k, auto v) { cfg.classify.keyword_min_length = parse_number<std::size_t>(k, v); }},
      {"expand.limit", [&](auto k, auto v) { cfg.expand.limit = parse_number<std::size_t>(k, v); }},
      {"expand.min_score", [&](auto k, auto v) { cfg.expand.min_score = parse_number<double>(k, v); }},
      {"provider.url", [&](auto, auto v) { cfg.provider.url = std::string(v); }},
      {"provider.timeout_ms", [&](auto k, auto v) { cfg.provider.timeout_ms = parse_number<int>(k, v); }},
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kValidation, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(ErrorKind::kValidation, "config line " + std::to_string(line_no) + ": unknown key '" +
                                              std::string(key) + "'");
    }
    it->second(key, value);
  }

  score.validate();
  if (cfg.classify.keyword_min_length == 0) {
    throw Error(ErrorKind::kValidation, "keywords.min_len must be positive");
  }
  if (cfg.expand.limit == 0) throw Error(ErrorKind::kValidation, "expand.limit must be positive");
  return cfg;
}

EngineConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

}  // namespace eicv
