#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eicv/error.hpp"
#include "eicv/knowledge_source.hpp"
#include "eicv/lexicon_store.hpp"
#include "eicv/text_pipeline.hpp"

namespace eicv {

struct ScoreConfig {
  std::size_t min_freq = 3;
  std::size_t entity_cap = 20;
  std::uint32_t threshold_num = 3;  // T_v = num * T_max / den
  std::uint32_t threshold_den = 4;
  std::size_t minimum_value = 3;    // topics emitted only when T_max > this

  // Throws Error{kValidation}; num < den keeps the argmax above T_v.
  void validate() const;
};

struct ClassifyOptions {
  ScoreConfig score;
  SearchCaps caps;
  std::size_t keyword_min_length = kDefaultKeywordMinLength;
};

struct WordCount {
  std::string word;
  std::size_t frequency = 0;

  friend bool operator==(const WordCount&, const WordCount&) = default;
};

// Sorted by frequency descending, then word ascending.
using RankedWords = std::vector<WordCount>;

// The retrieved frequent words, in ranking order.
using EntitySet = std::vector<std::string>;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

struct TopicValue {
  TopicName topic;
  std::size_t value = 0;
};

struct TopicDecision {
  std::size_t t_max = 0;
  Rational t_v;
  std::vector<TopicName> matched;  // value desc, then catalog order
};

struct ClassificationDiagnostics {
  KeywordSet keywords;
  std::size_t pool_size = 0;
  std::map<std::string, KeywordHits> per_keyword;
  std::map<std::string, std::string> backend_errors;
  std::optional<std::string> tweet_id;
};

struct ClassificationResult {
  std::vector<TopicValue> values;  // catalog order
  std::size_t t_max = 0;
  Rational t_v;
  std::vector<TopicName> matched;
  EntitySet entities;
  ClassificationDiagnostics diagnostics;

  std::size_t value_of(const TopicName& topic) const;
};

class ClassificationError : public Error {
 public:
  ClassificationError(const std::string& message, ClassificationResult partial)
      : Error(ErrorKind::kBackend, message), partial_(std::move(partial)) {}

  const ClassificationResult& partial() const noexcept { return partial_; }

 private:
  ClassificationResult partial_;
};

// Word frequencies over every pooled tweet, redundant words excluded.
RankedWords rank_words(const KnowledgePool& pool, const RedundantWordStore& store);

EntitySet build_entity_set(const RankedWords& ranked, const ScoreConfig& cfg);

// Number of tags hit by the entity set. A phrase tag counts once when all
// of its words are entities.
std::size_t intersect_value(const EntitySet& entities, const TagSet& tags);

// Exact threshold test: value * den > num * t_max.
TopicDecision generate_topics(const std::vector<TopicValue>& values, const ScoreConfig& cfg);

// Throws Error{kValidation} for an empty catalog or blank tweet text, and
// ClassificationError when any knowledge query failed.
ClassificationResult classify(const Tweet& tweet, const TopicCatalog& catalog,
                              const SearchBackend& backend, const RedundantWordStore& store,
                              const ClassifyOptions& options = {});

// Throws Error{kNoTweet} when the user has no tweet in the backend.
ClassificationResult classify_user(std::string_view username, const TopicCatalog& catalog,
                                   const SearchBackend& backend, const RedundantWordStore& store,
                                   const ClassifyOptions& options = {});

nlohmann::ordered_json to_json(const ClassificationResult& result);

}  // namespace eicv
