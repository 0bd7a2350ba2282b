#include "eicv/scorer.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "eicv/strings.hpp"

namespace eicv {

void ScoreConfig::validate() const {
  if (min_freq == 0) throw Error(ErrorKind::kValidation, "min_freq must be positive");
  if (entity_cap == 0) throw Error(ErrorKind::kValidation, "entity_cap must be positive");
  if (threshold_num == 0 || threshold_den == 0) {
    throw Error(ErrorKind::kValidation, "threshold_num and threshold_den must be positive");
  }
  if (threshold_num >= threshold_den) {
    throw Error(ErrorKind::kValidation, "threshold_num must be smaller than threshold_den");
  }
}

std::size_t ClassificationResult::value_of(const TopicName& topic) const {
  for (const TopicValue& v : values) {
    if (v.topic == topic) return v.value;
  }
  return 0;
}

RankedWords rank_words(const KnowledgePool& pool, const RedundantWordStore& store) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const Tweet& t : pool.tweets) {
    for (std::string& token : tokenize(strip_urls(t.text))) {
      if (!store.contains(token)) ++counts[std::move(token)];
    }
  }
  RankedWords ranked;
  ranked.reserve(counts.size());
  for (auto& [word, n] : counts) ranked.push_back(WordCount{word, n});
  std::sort(ranked.begin(), ranked.end(), [](const WordCount& a, const WordCount& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.word < b.word;
  });
  return ranked;
}

EntitySet build_entity_set(const RankedWords& ranked, const ScoreConfig& cfg) {
  EntitySet entities;
  for (const WordCount& wc : ranked) {
    if (entities.size() >= cfg.entity_cap) break;
    // ranked is frequency-descending, so the first miss ends the scan
    if (wc.frequency < cfg.min_freq) break;
    entities.push_back(wc.word);
  }
  return entities;
}

std::size_t intersect_value(const EntitySet& entities, const TagSet& tags) {
  if (entities.empty() || tags.empty()) return 0;
  const std::unordered_set<std::string_view> lookup(entities.begin(), entities.end());
  std::size_t value = 0;
  for (const std::string& tag : tags) {
    if (tag.find(' ') == std::string::npos) {
      if (lookup.contains(tag)) ++value;
      continue;
    }
    const auto words = split_whitespace(tag);
    if (std::all_of(words.begin(), words.end(),
                    [&](const std::string& w) { return lookup.contains(w); })) {
      ++value;
    }
  }
  return value;
}

TopicDecision generate_topics(const std::vector<TopicValue>& values, const ScoreConfig& cfg) {
  if (values.empty()) throw Error(ErrorKind::kValidation, "no topic values to threshold");
  TopicDecision decision;
  for (const TopicValue& v : values) decision.t_max = std::max(decision.t_max, v.value);

  const auto num = static_cast<std::int64_t>(cfg.threshold_num);
  const auto den = static_cast<std::int64_t>(cfg.threshold_den);
  const auto t_max = static_cast<std::int64_t>(decision.t_max);
  const std::int64_t g = std::gcd(num * t_max, den);
  decision.t_v = Rational{num * t_max / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};

  if (decision.t_max <= cfg.minimum_value) return decision;

  std::vector<const TopicValue*> passing;
  for (const TopicValue& v : values) {
    if (static_cast<std::int64_t>(v.value) * den > num * t_max) passing.push_back(&v);
  }
  std::stable_sort(passing.begin(), passing.end(),
                   [](const TopicValue* a, const TopicValue* b) { return a->value > b->value; });
  for (const TopicValue* v : passing) decision.matched.push_back(v->topic);
  return decision;
}

ClassificationResult classify(const Tweet& tweet, const TopicCatalog& catalog,
                              const SearchBackend& backend, const RedundantWordStore& store,
                              const ClassifyOptions& options) {
  if (catalog.empty()) throw Error(ErrorKind::kValidation, "topic catalog is empty");
  options.score.validate();

  ClassificationResult result;
  result.diagnostics.tweet_id = tweet.id;
  result.diagnostics.keywords = keywords_of(tweet, store, options.keyword_min_length);
  for (const TopicName& topic : catalog.topics()) result.values.push_back(TopicValue{topic, 0});

  const auto& keywords = result.diagnostics.keywords.keywords;
  if (keywords.empty()) return result;

  KnowledgePool pool = gather(backend, keywords, options.caps);
  result.diagnostics.pool_size = pool.tweets.size();
  result.diagnostics.per_keyword = pool.per_keyword;
  result.diagnostics.backend_errors = pool.errors;
  if (!pool.errors.empty()) {
    const auto& [keyword, message] = *pool.errors.begin();
    throw ClassificationError("knowledge query for '" + keyword + "' failed: " + message,
                              std::move(result));
  }

  result.entities = build_entity_set(rank_words(pool, store), options.score);
  if (result.entities.empty()) return result;

  for (TopicValue& v : result.values) v.value = intersect_value(result.entities, catalog.tags(v.topic));
  TopicDecision decision = generate_topics(result.values, options.score);
  result.t_max = decision.t_max;
  result.t_v = decision.t_v;
  result.matched = std::move(decision.matched);
  return result;
}

ClassificationResult classify_user(std::string_view username, const TopicCatalog& catalog,
                                   const SearchBackend& backend, const RedundantWordStore& store,
                                   const ClassifyOptions& options) {
  std::optional<Tweet> tweet = last_tweet(backend, username);
  if (!tweet) {
    throw Error(ErrorKind::kNoTweet, "no tweet found for user '" + std::string(username) + "'");
  }
  return classify(*tweet, catalog, backend, store, options);
}

nlohmann::ordered_json to_json(const ClassificationResult& result) {
  nlohmann::ordered_json j;
  j["matched"] = nlohmann::ordered_json::array();
  for (const TopicName& t : result.matched) j["matched"].push_back(t.str());
  j["values"] = nlohmann::ordered_json::object();
  for (const TopicValue& v : result.values) j["values"][v.topic.str()] = v.value;
  j["t_max"] = result.t_max;
  j["t_v"] = result.t_v.to_double();
  j["entities"] = result.entities;

  const ClassificationDiagnostics& d = result.diagnostics;
  nlohmann::ordered_json diag;
  diag["keywords"] = d.keywords.keywords;
  diag["discarded"] = d.keywords.discarded;
  diag["pool_size"] = d.pool_size;
  diag["per_keyword"] = nlohmann::ordered_json::object();
  for (const auto& [kw, hits] : d.per_keyword) {
    diag["per_keyword"][kw] = {{"popular", hits.popular}, {"recent", hits.recent}};
  }
  if (!d.backend_errors.empty()) diag["backend_errors"] = d.backend_errors;
  if (d.tweet_id) diag["tweet_id"] = *d.tweet_id;
  j["diagnostics"] = std::move(diag);
  return j;
}

}  // namespace eicv
