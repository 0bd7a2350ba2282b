#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eicv/config.hpp"

namespace eicv::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kIoError = 2,
  kNotFound = 3,
  kUsage = 64,
};

// Resolved file locations. Anything not given on the command line lives
// next to the topics file.
struct Paths {
  fs::path topics;
  fs::path tags_dir;
  fs::path redword;
  fs::path whitelist;
  fs::path removed;
  fs::path corpus;
  fs::path index;
  fs::path related;
  fs::path groups;
};

struct Context {
  Paths paths;
  EngineConfig config;
  bool json = false;
  bool live = false;
  std::ostream* out;
  std::ostream* err;
  std::istream* in;
};

int topics_add(const Context& ctx, const std::string& name);
int topics_remove(const Context& ctx, const std::string& name);
int topics_list(const Context& ctx);

int tags_expand(const Context& ctx, const std::optional<std::string>& topic,
                std::optional<std::size_t> limit);
int tags_triage(const Context& ctx, const std::optional<fs::path>& decisions_file);
int tags_add(const Context& ctx, const std::string& topic, const std::vector<std::string>& tags,
             bool from_pending);
int tags_list(const Context& ctx, const std::string& topic);

int index_corpus(const Context& ctx, const fs::path& out);

int classify(const Context& ctx, const std::optional<std::string>& text,
             const std::optional<std::string>& user, bool learn);

int evaluate(const Context& ctx, const fs::path& dataset);

}  // namespace eicv::cli
