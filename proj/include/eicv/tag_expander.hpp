#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eicv/lexicon_store.hpp"

namespace eicv {

struct RelatedWord {
  std::string word;
  double score = 0.0;  // relatedness in [0, 1]

  friend bool operator==(const RelatedWord&, const RelatedWord&) = default;
};

// Source of candidate tags for a topic. Results hold at most `limit`
// entries with non-increasing scores. Failures are Error{kBackend}.
class RelatedWordsProvider {
 public:
  virtual ~RelatedWordsProvider() = default;
  virtual std::vector<RelatedWord> related(std::string_view term, std::size_t limit) const = 0;
};

// Offline provider backed by a `term<TAB>related<TAB>score` file.
class RelatedWordsTable final : public RelatedWordsProvider {
 public:
  RelatedWordsTable() = default;

  // Malformed lines (wrong field count, score outside [0,1]) are skipped
  // and counted in skipped_lines().
  static RelatedWordsTable load(const std::filesystem::path& path);

  void add(std::string_view term, std::string_view word, double score);

  std::vector<RelatedWord> related(std::string_view term, std::size_t limit) const override;

  std::size_t skipped_lines() const noexcept { return skipped_; }

 private:
  std::map<std::string, std::vector<RelatedWord>, std::less<>> entries_;
  std::size_t skipped_ = 0;
};

struct ExpandOptions {
  std::size_t limit = 100;
  double min_score = 0.1;
};

// Canonical candidates for one topic, in provider order, excluding tags the
// topic already has and tags the trainer removed from it. Nothing is
// committed to the catalog.
std::vector<std::string> expand_topic(const TopicCatalog& catalog, std::string_view topic,
                                      const RelatedWordsProvider& provider,
                                      const ExpandOptions& options = {});

struct Expansion {
  std::vector<std::pair<TopicName, std::vector<std::string>>> candidates;  // catalog order
  std::vector<std::pair<TopicName, std::string>> errors;
  // What detect_ambiguous would report if every candidate were committed.
  AmbiguityReport hypothetical;
};

Expansion expand_all(const TopicCatalog& catalog, const RelatedWordsProvider& provider,
                     const ExpandOptions& options = {});

}  // namespace eicv
