#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eicv {

// Canonical (lowercase, single-spaced, comma-free) topic name.
class TopicName {
 public:
  // Throws Error{kValidation} for names that are empty after
  // canonicalization or contain a comma.
  static TopicName parse(std::string_view raw);

  const std::string& str() const noexcept { return value_; }

  // "goal keeping" -> "goal_keeping"; used for the per-topic tag file.
  std::string file_stem() const;

  friend bool operator==(const TopicName&, const TopicName&) = default;
  friend auto operator<=>(const TopicName&, const TopicName&) = default;

 private:
  explicit TopicName(std::string canonical) : value_(std::move(canonical)) {}

  std::string value_;
};

using TagSet = std::set<std::string, std::less<>>;

// A tag approved as legitimately shared by exactly this set of topics.
struct SharedTag {
  std::string tag;
  std::set<TopicName> topics;

  friend auto operator<=>(const SharedTag&, const SharedTag&) = default;
  friend bool operator==(const SharedTag&, const SharedTag&) = default;
};

// A tag the trainer removed from a topic; the expander will not propose it
// for that topic again.
struct RemovedTag {
  std::string tag;
  TopicName topic;

  friend auto operator<=>(const RemovedTag&, const RemovedTag&) = default;
  friend bool operator==(const RemovedTag&, const RemovedTag&) = default;
};

class TopicCatalog {
 public:
  const std::vector<TopicName>& topics() const noexcept { return topics_; }
  std::size_t size() const noexcept { return topics_.size(); }
  bool empty() const noexcept { return topics_.empty(); }
  bool contains(const TopicName& topic) const { return tagsets_.contains(topic); }

  // Throws Error{kNotFound} for an unknown topic.
  const TagSet& tags(const TopicName& topic) const;

  // Throws kValidation for an invalid name, kDuplicate when present.
  const TopicName& add_topic(std::string_view name);

  // Drops the topic, its tags, and every whitelist/removal entry naming it.
  void remove_topic(std::string_view name);

  // Canonicalizes and inserts; returns how many tags were new. Empty or
  // comma-bearing tags are ignored.
  std::size_t add_tags(std::string_view topic, std::span<const std::string> tags);

  // Returns false if the tag was not present.
  bool remove_tag(const TopicName& topic, std::string_view tag);

  const std::set<SharedTag>& whitelist() const noexcept { return whitelist_; }
  void add_whitelist(SharedTag entry);
  bool is_whitelisted(std::string_view tag, const std::set<TopicName>& topics) const;

  const std::set<RemovedTag>& removed() const noexcept { return removed_; }
  void record_removal(std::string_view tag, const TopicName& topic);
  bool was_removed(std::string_view tag, const TopicName& topic) const;

  friend bool operator==(const TopicCatalog&, const TopicCatalog&) = default;

 private:
  TopicName require(std::string_view name) const;

  std::vector<TopicName> topics_;
  std::map<TopicName, TagSet> tagsets_;
  std::set<SharedTag> whitelist_;
  std::set<RemovedTag> removed_;
};

// Canonical tag form, or "" when the tag is unusable (empty or has a comma).
std::string canonical_tag(std::string_view raw);

struct CatalogPaths {
  std::filesystem::path topics;
  std::filesystem::path tags_dir;
  std::filesystem::path whitelist;
  std::filesystem::path removed;

  // whitelist.csv and removed.csv next to the topics file.
  static CatalogPaths beside(const std::filesystem::path& topics,
                             const std::filesystem::path& tags_dir);

  std::filesystem::path tag_file(const TopicName& topic) const;
};

struct CatalogLoad {
  TopicCatalog catalog;
  std::size_t skipped_tags = 0;
  std::vector<std::string> warnings;
};

// Missing topics file or a missing per-topic file is an Error{kIo}. The
// whitelist and removal files are optional.
CatalogLoad load_catalog(const CatalogPaths& paths);

// All files are staged first and renamed into place together; the topics
// file is renamed last.
void save_catalog(const TopicCatalog& catalog, const CatalogPaths& paths);

struct AmbiguousTag {
  std::string tag;
  std::vector<TopicName> topics;  // catalog order

  friend bool operator==(const AmbiguousTag&, const AmbiguousTag&) = default;
};

struct AmbiguityReport {
  std::vector<AmbiguousTag> entries;  // tag order

  bool empty() const noexcept { return entries.empty(); }
  const AmbiguousTag* find(std::string_view tag) const;
};

AmbiguityReport detect_ambiguous(const TopicCatalog& catalog);

struct TriageDecision {
  enum class Action { kRemoveFrom, kRemoveEverywhere, kWhitelist };

  std::string tag;
  Action action = Action::kWhitelist;
  std::vector<TopicName> topics;  // only for kRemoveFrom
};

struct ResolveOutcome {
  std::size_t applied = 0;
  std::vector<std::string> warnings;
};

// Decisions naming tags outside the current ambiguity report are skipped
// with a warning.
ResolveOutcome resolve_ambiguity(TopicCatalog& catalog, std::span<const TriageDecision> decisions);

// Persisted redundant-word list (redword.csv).
class RedundantWordStore {
 public:
  RedundantWordStore() = default;
  explicit RedundantWordStore(std::span<const std::string> words);

  static RedundantWordStore load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  bool contains(std::string_view word) const { return words_.contains(word); }
  std::size_t size() const noexcept { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const noexcept { return words_; }

  // Returns the number of words that were not already present.
  std::size_t add(std::span<const std::string> words);

  friend bool operator==(const RedundantWordStore&, const RedundantWordStore&) = default;

 private:
  std::set<std::string, std::less<>> words_;
};

}  // namespace eicv
