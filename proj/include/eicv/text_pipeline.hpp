#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eicv/lexicon_store.hpp"

namespace eicv {

struct Tweet {
  std::string text;
  std::optional<std::string> author;
  std::optional<std::int64_t> timestamp;  // epoch seconds
  std::optional<std::uint64_t> popularity;
  std::optional<std::string> id;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

// Ordered word tokens of one text; duplicates are kept.
using TokenList = std::vector<std::string>;

struct KeywordSet {
  std::set<std::string> keywords;
  // Tokens rejected by the keyword heuristic in this run. These are the
  // candidates fed back into the redundant-word store.
  std::set<std::string> discarded;

  friend bool operator==(const KeywordSet&, const KeywordSet&) = default;
};

inline constexpr std::size_t kDefaultKeywordMinLength = 3;

// Removes every `http://`, `https://` or word-initial `www.` run up to the
// next whitespace. Text without "http" or "www" is returned unchanged.
std::string strip_urls(std::string_view text);

// Lowercases, splits on whitespace and on ASCII punctuation other than
// apostrophes and hyphens, then trims apostrophes and hyphens from token
// edges. '#' and '@' sigils therefore disappear.
TokenList tokenize(std::string_view text);

TokenList remove_redundant(const TokenList& tokens, const RedundantWordStore& store);

// A token is a keyword when it has at least `min_length` code points and
// contains an ASCII letter; the rest are discarded.
KeywordSet extract_keywords(const TokenList& tokens,
                            std::size_t min_length = kDefaultKeywordMinLength);

// Adds `discarded` to the store and persists it. On a write failure the
// store is left as it was and the error propagates. Returns the number of
// new words.
std::size_t learn_redundant(RedundantWordStore& store, const std::set<std::string>& discarded,
                            const std::filesystem::path& redword_path);

// strip_urls -> tokenize -> remove_redundant -> extract_keywords.
// Throws Error{kValidation} for blank tweet text.
KeywordSet keywords_of(const Tweet& tweet, const RedundantWordStore& store,
                       std::size_t min_length = kDefaultKeywordMinLength);

}  // namespace eicv
