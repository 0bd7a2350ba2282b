#include "eicv/knowledge_source.hpp"

#include <algorithm>
#include <fstream>
#include <new>
#include <numeric>
#include <stdexcept>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/optional.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/unordered_map.hpp>
#include <cereal/types/vector.hpp>
#include <json.hpp>

#include "eicv/error.hpp"
#include "eicv/strings.hpp"

namespace eicv {

namespace {

constexpr char kCacheMagic[] = "EICVIDX";
constexpr std::uint32_t kCacheVersion = 1;

std::int64_t ts_of(const Tweet& t) { return t.timestamp.value_or(0); }
std::uint64_t pop_of(const Tweet& t) { return t.popularity.value_or(0); }
const std::string& id_of(const Tweet& t) {
  static const std::string empty;
  return t.id ? *t.id : empty;
}

bool popular_before(const Tweet& a, const Tweet& b) {
  if (pop_of(a) != pop_of(b)) return pop_of(a) > pop_of(b);
  if (ts_of(a) != ts_of(b)) return ts_of(a) > ts_of(b);
  return id_of(a) > id_of(b);
}

bool recent_before(const Tweet& a, const Tweet& b) {
  if (ts_of(a) != ts_of(b)) return ts_of(a) > ts_of(b);
  return id_of(a) > id_of(b);
}

std::vector<std::string> distinct_tokens(const std::string& text) {
  TokenList tokens = tokenize(strip_urls(text));
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

}  // namespace

template <class Archive>
void serialize(Archive& ar, Tweet& t) {
  ar(t.text, t.author, t.timestamp, t.popularity, t.id);
}

template <class Archive>
void CorpusIndex::serialize(Archive& ar) {
  ar(documents_, by_id_, popular_postings_, recent_postings_, by_user_);
}

std::string canonical_username(std::string_view raw) {
  std::string_view t = trim(raw);
  if (!t.empty() && t.front() == '@') t.remove_prefix(1);
  return to_lower(t);
}

CorpusIndex CorpusIndex::build(std::vector<Tweet> tweets) {
  CorpusIndex index;
  {
    std::unordered_map<std::string, std::size_t> slot;
    std::vector<Tweet> unique;
    unique.reserve(tweets.size());
    for (Tweet& t : tweets) {
      if (!t.id) throw Error(ErrorKind::kValidation, "corpus tweet without id");
      auto [it, inserted] = slot.emplace(*t.id, unique.size());
      if (inserted) {
        unique.push_back(std::move(t));
      } else {
        unique[it->second] = std::move(t);
      }
    }
    index.documents_ = std::move(unique);
  }
  auto& docs = index.documents_;
  std::sort(docs.begin(), docs.end(), popular_before);

  std::vector<DocId> recency(docs.size());
  std::iota(recency.begin(), recency.end(), DocId{0});
  std::sort(recency.begin(), recency.end(),
            [&](DocId a, DocId b) { return recent_before(docs[a], docs[b]); });
  std::vector<DocId> recent_rank(docs.size());
  for (DocId r = 0; r < recency.size(); ++r) recent_rank[recency[r]] = r;

  index.by_id_.reserve(docs.size());
  for (DocId d = 0; d < docs.size(); ++d) {
    index.by_id_.emplace(*docs[d].id, d);
    for (std::string& token : distinct_tokens(docs[d].text)) {
      index.popular_postings_[std::move(token)].push_back(d);
    }
  }

  auto by_recency = [&](DocId a, DocId b) { return recent_rank[a] < recent_rank[b]; };
  index.recent_postings_.reserve(index.popular_postings_.size());
  for (const auto& [token, postings] : index.popular_postings_) {
    std::vector<DocId> recent = postings;
    std::sort(recent.begin(), recent.end(), by_recency);
    index.recent_postings_.emplace(token, std::move(recent));
  }

  for (DocId d : recency) {
    if (docs[d].author) index.by_user_[canonical_username(*docs[d].author)].push_back(d);
  }
  return index;
}

const Tweet* CorpusIndex::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &documents_[it->second];
}

namespace {

std::vector<Tweet> take(const std::vector<Tweet>& docs,
                        const std::unordered_map<std::string, std::vector<CorpusIndex::DocId>>& postings,
                        std::string_view keyword, std::size_t cap) {
  std::vector<Tweet> out;
  if (cap == 0) return out;
  auto it = postings.find(to_lower(keyword));
  if (it == postings.end()) return out;
  const std::size_t n = std::min(cap, it->second.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(docs[it->second[i]]);
  return out;
}

}  // namespace

std::vector<Tweet> CorpusIndex::search_popular(std::string_view keyword, std::size_t cap) const {
  return take(documents_, popular_postings_, keyword, cap);
}

std::vector<Tweet> CorpusIndex::search_recent(std::string_view keyword, std::size_t cap) const {
  return take(documents_, recent_postings_, keyword, cap);
}

std::optional<Tweet> CorpusIndex::last_tweet(std::string_view username) const {
  auto it = by_user_.find(canonical_username(username));
  if (it == by_user_.end() || it->second.empty()) return std::nullopt;
  return documents_[it->second.front()];
}

void CorpusIndex::save(const std::filesystem::path& path) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
    out.write(kCacheMagic, sizeof kCacheMagic);
    cereal::PortableBinaryOutputArchive ar(out);
    ar(kCacheVersion);
    ar(*this);
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorKind::kIo, "write failed: " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot replace " + path.string());
  }
}

CorpusIndex CorpusIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open index cache " + path.string());
  char magic[sizeof kCacheMagic] = {};
  in.read(magic, sizeof magic);
  if (!in || std::string_view(magic, sizeof magic) != std::string_view(kCacheMagic, sizeof kCacheMagic)) {
    throw Error(ErrorKind::kIo, path.string() + " is not an index cache");
  }
  CorpusIndex index;
  try {
    cereal::PortableBinaryInputArchive ar(in);
    std::uint32_t version = 0;
    ar(version);
    if (version != kCacheVersion) {
      throw Error(ErrorKind::kIo, path.string() + ": unsupported cache version " +
                                      std::to_string(version));
    }
    ar(index);
  } catch (const cereal::Exception& e) {
    throw Error(ErrorKind::kIo, path.string() + ": corrupt index cache (" + e.what() + ")");
  } catch (const std::bad_alloc&) {
    // a damaged length prefix asks for an absurd allocation
    throw Error(ErrorKind::kIo, path.string() + ": corrupt index cache");
  } catch (const std::length_error&) {
    throw Error(ErrorKind::kIo, path.string() + ": corrupt index cache");
  }
  return index;
}

namespace {

std::optional<Tweet> parse_corpus_line(const std::string& line) {
  using nlohmann::json;
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;

  Tweet t;
  auto id = j.find("id");
  if (id == j.end()) return std::nullopt;
  if (id->is_string()) {
    t.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    t.id = std::to_string(id->get<std::int64_t>());
  } else {
    return std::nullopt;
  }
  if (t.id->empty()) return std::nullopt;

  auto text = j.find("text");
  if (text == j.end() || !text->is_string()) return std::nullopt;
  t.text = text->get<std::string>();

  if (auto user = j.find("user"); user != j.end() && !user->is_null()) {
    if (!user->is_string()) return std::nullopt;
    t.author = user->get<std::string>();
  }
  t.timestamp = 0;
  if (auto ts = j.find("ts"); ts != j.end() && !ts->is_null()) {
    if (!ts->is_number_integer()) return std::nullopt;
    t.timestamp = ts->get<std::int64_t>();
  }
  t.popularity = 0;
  if (auto pop = j.find("pop"); pop != j.end() && !pop->is_null()) {
    if (!pop->is_number_integer() || pop->get<std::int64_t>() < 0) return std::nullopt;
    t.popularity = pop->get<std::uint64_t>();
  }
  return t;
}

}  // namespace

IndexedCorpus index_corpus(const std::filesystem::path& jsonl_path) {
  std::ifstream in(jsonl_path, std::ios::binary);
  if (!in || !std::filesystem::is_regular_file(jsonl_path)) {
    throw Error(ErrorKind::kIo, "cannot read corpus " + jsonl_path.string());
  }
  IndexedCorpus result;
  std::vector<Tweet> tweets;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::optional<Tweet> t = parse_corpus_line(line);
    if (!t) {
      ++result.malformed_lines;
      result.warnings.push_back("line " + std::to_string(line_no) + ": malformed record skipped");
      continue;
    }
    if (auto [it, inserted] = seen.emplace(*t->id, line_no); !inserted) {
      ++result.duplicate_ids;
      result.warnings.push_back("line " + std::to_string(line_no) + ": duplicate id '" + *t->id +
                                "' replaces line " + std::to_string(it->second));
      it->second = line_no;
    }
    tweets.push_back(std::move(*t));
  }
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed: " + jsonl_path.string());
  result.index = CorpusIndex::build(std::move(tweets));
  return result;
}

namespace {

std::string pool_key(const Tweet& t) { return t.id ? "id:" + *t.id : "text:" + t.text; }

}  // namespace

KnowledgePool gather(const SearchBackend& backend, const std::set<std::string>& keywords,
                     const SearchCaps& caps) {
  KnowledgePool pool;
  std::map<std::string, Tweet> unique;
  for (const std::string& keyword : keywords) {
    try {
      std::vector<Tweet> popular = backend.search_popular(keyword, caps.popular);
      std::vector<Tweet> recent = backend.search_recent(keyword, caps.recent);
      pool.per_keyword[keyword] = KeywordHits{popular.size(), recent.size()};
      for (auto* batch : {&popular, &recent}) {
        for (Tweet& t : *batch) unique.try_emplace(pool_key(t), std::move(t));
      }
    } catch (const Error& e) {
      pool.errors[keyword] = e.what();
    } catch (const std::exception& e) {
      pool.errors[keyword] = e.what();
    }
  }
  pool.tweets.reserve(unique.size());
  for (auto& [key, tweet] : unique) pool.tweets.push_back(std::move(tweet));
  return pool;
}

std::optional<Tweet> last_tweet(const SearchBackend& backend, std::string_view username) {
  if (canonical_username(username).empty()) {
    throw Error(ErrorKind::kValidation, "username is empty");
  }
  return backend.last_tweet(username);
}

}  // namespace eicv
