#include "eicv/text_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <regex>
#include <vector>

#include "eicv/error.hpp"
#include "eicv/strings.hpp"

namespace eicv {

std::string strip_urls(std::string_view text) {
  if (text.find("http") == std::string_view::npos && text.find("www") == std::string_view::npos) {
    return std::string(text);
  }
  static const std::regex url(R"((https?://|\bwww\.)\S*)");
  std::string out;
  std::regex_replace(std::back_inserter(out), text.begin(), text.end(), url, "");
  return out;
}

namespace {

bool is_delimiter(char c) noexcept {
  if (is_space(c)) return true;
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return false;
  if (c == '\'' || c == '-') return false;
  return std::ispunct(u) != 0 || std::iscntrl(u) != 0;
}

bool is_edge_mark(char c) noexcept { return c == '\'' || c == '-'; }

}  // namespace

TokenList tokenize(std::string_view text) {
  TokenList tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_delimiter(text[i])) ++i;
    std::size_t begin = i;
    while (i < text.size() && !is_delimiter(text[i])) ++i;
    std::size_t end = i;
    while (begin < end && is_edge_mark(text[begin])) ++begin;
    while (end > begin && is_edge_mark(text[end - 1])) --end;
    if (end > begin) tokens.push_back(to_lower(text.substr(begin, end - begin)));
  }
  return tokens;
}

TokenList remove_redundant(const TokenList& tokens, const RedundantWordStore& store) {
  TokenList out;
  out.reserve(tokens.size());
  std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
               [&](const std::string& t) { return !store.contains(t); });
  return out;
}

KeywordSet extract_keywords(const TokenList& tokens, std::size_t min_length) {
  KeywordSet result;
  for (const std::string& token : tokens) {
    const bool has_letter = std::any_of(token.begin(), token.end(), is_ascii_alpha);
    if (has_letter && utf8_length(token) >= min_length) {
      result.keywords.insert(token);
    } else {
      result.discarded.insert(token);
    }
  }
  return result;
}

std::size_t learn_redundant(RedundantWordStore& store, const std::set<std::string>& discarded,
                            const std::filesystem::path& redword_path) {
  if (discarded.empty()) return 0;
  RedundantWordStore next = store;
  const std::vector<std::string> words(discarded.begin(), discarded.end());
  const std::size_t added = next.add(words);
  if (added == 0) return 0;
  next.save(redword_path);
  store = std::move(next);
  return added;
}

KeywordSet keywords_of(const Tweet& tweet, const RedundantWordStore& store,
                       std::size_t min_length) {
  if (trim(tweet.text).empty()) throw Error(ErrorKind::kValidation, "tweet text is empty");
  return extract_keywords(remove_redundant(tokenize(strip_urls(tweet.text)), store), min_length);
}

}  // namespace eicv
