#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eicv/text_pipeline.hpp"

namespace eicv {

// Per-keyword result caps; the defaults are the free Twitter search limits.
struct SearchCaps {
  std::size_t popular = 20;
  std::size_t recent = 100;
};

// Where knowledge comes from. Implementations must tolerate concurrent
// const calls and report transport failures as Error{kBackend}.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;

  virtual std::vector<Tweet> search_popular(std::string_view keyword, std::size_t cap) const = 0;
  virtual std::vector<Tweet> search_recent(std::string_view keyword, std::size_t cap) const = 0;
  virtual std::optional<Tweet> last_tweet(std::string_view username) const = 0;
};

// Usernames are matched case-insensitively and without a leading '@'.
std::string canonical_username(std::string_view raw);

// Immutable in-memory inverted index over a tweet corpus.
//
// Documents are stored in popularity order (popularity desc, timestamp
// desc, id desc) so a posting list read front to back is already the
// popular ranking. A second posting list per token holds the recency order
// (timestamp desc, id desc).
class CorpusIndex {
 public:
  using DocId = std::uint32_t;

  CorpusIndex() = default;

  // Every tweet must carry an id; duplicate ids keep the last occurrence.
  static CorpusIndex build(std::vector<Tweet> tweets);

  std::size_t size() const noexcept { return documents_.size(); }
  const std::vector<Tweet>& documents() const noexcept { return documents_; }
  const Tweet* find(std::string_view id) const;

  std::vector<Tweet> search_popular(std::string_view keyword, std::size_t cap) const;
  std::vector<Tweet> search_recent(std::string_view keyword, std::size_t cap) const;
  std::optional<Tweet> last_tweet(std::string_view username) const;

  // Versioned binary cache. load() throws Error{kIo} on a missing,
  // truncated, or foreign file.
  void save(const std::filesystem::path& path) const;
  static CorpusIndex load(const std::filesystem::path& path);

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;

  template <class Archive>
  void serialize(Archive& ar);

 private:
  std::vector<Tweet> documents_;
  std::unordered_map<std::string, DocId> by_id_;
  std::unordered_map<std::string, std::vector<DocId>> popular_postings_;
  std::unordered_map<std::string, std::vector<DocId>> recent_postings_;
  std::unordered_map<std::string, std::vector<DocId>> by_user_;  // newest first
};

struct IndexedCorpus {
  CorpusIndex index;
  std::size_t malformed_lines = 0;
  std::size_t duplicate_ids = 0;
  std::vector<std::string> warnings;
};

// Reads `{"id", "user", "text", "ts", "pop"}` JSON lines. Malformed lines
// are counted and skipped; an unreadable file is Error{kIo}.
IndexedCorpus index_corpus(const std::filesystem::path& jsonl_path);

// SearchBackend over a CorpusIndex the caller keeps alive.
class CorpusBackend final : public SearchBackend {
 public:
  explicit CorpusBackend(const CorpusIndex& index) : index_(&index) {}

  std::vector<Tweet> search_popular(std::string_view keyword, std::size_t cap) const override {
    return index_->search_popular(keyword, cap);
  }
  std::vector<Tweet> search_recent(std::string_view keyword, std::size_t cap) const override {
    return index_->search_recent(keyword, cap);
  }
  std::optional<Tweet> last_tweet(std::string_view username) const override {
    return index_->last_tweet(username);
  }

 private:
  const CorpusIndex* index_;
};

struct KeywordHits {
  std::size_t popular = 0;
  std::size_t recent = 0;

  friend bool operator==(const KeywordHits&, const KeywordHits&) = default;
};

struct KnowledgePool {
  std::vector<Tweet> tweets;  // unique ids, sorted by id
  std::map<std::string, KeywordHits> per_keyword;
  std::map<std::string, std::string> errors;  // keyword -> backend message
};

// One popular and one recent query per keyword, unioned by tweet id. A
// failing keyword is recorded in `errors` and the rest are still queried.
KnowledgePool gather(const SearchBackend& backend, const std::set<std::string>& keywords,
                     const SearchCaps& caps = {});

// Throws Error{kValidation} for an empty username.
std::optional<Tweet> last_tweet(const SearchBackend& backend, std::string_view username);

}  // namespace eicv
