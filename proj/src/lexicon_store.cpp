#include "eicv/lexicon_store.hpp"

#include <algorithm>
#include <sstream>

#include "eicv/error.hpp"
#include "eicv/files.hpp"
#include "eicv/strings.hpp"

namespace eicv {

TopicName TopicName::parse(std::string_view raw) {
  std::string canonical = canonicalize(raw);
  if (canonical.empty()) throw Error(ErrorKind::kValidation, "topic name is empty");
  if (canonical.find_first_of(",/\\") != std::string::npos) {
    throw Error(ErrorKind::kValidation,
                "topic name '" + canonical + "' contains a forbidden character (',', '/', '\\')");
  }
  if (canonical.front() == '.') {
    throw Error(ErrorKind::kValidation, "topic name '" + canonical + "' starts with '.'");
  }
  return TopicName(std::move(canonical));
}

std::string TopicName::file_stem() const {
  std::string stem = value_;
  std::replace(stem.begin(), stem.end(), ' ', '_');
  return stem;
}

std::string canonical_tag(std::string_view raw) {
  std::string tag = canonicalize(raw);
  if (tag.find(',') != std::string::npos) return {};
  return tag;
}

const TagSet& TopicCatalog::tags(const TopicName& topic) const {
  auto it = tagsets_.find(topic);
  if (it == tagsets_.end()) {
    throw Error(ErrorKind::kNotFound, "topic '" + topic.str() + "' not found");
  }
  return it->second;
}

TopicName TopicCatalog::require(std::string_view name) const {
  TopicName topic = TopicName::parse(name);
  if (!contains(topic)) throw Error(ErrorKind::kNotFound, "topic '" + topic.str() + "' not found");
  return topic;
}

const TopicName& TopicCatalog::add_topic(std::string_view name) {
  TopicName topic = TopicName::parse(name);
  if (contains(topic)) {
    throw Error(ErrorKind::kDuplicate, "topic '" + topic.str() + "' already exists");
  }
  for (const TopicName& existing : topics_) {
    if (existing.file_stem() == topic.file_stem()) {
      throw Error(ErrorKind::kDuplicate, "topic '" + topic.str() + "' would share the tag file of '" +
                                             existing.str() + "'");
    }
  }
  tagsets_.emplace(topic, TagSet{});
  topics_.push_back(std::move(topic));
  return topics_.back();
}

void TopicCatalog::remove_topic(std::string_view name) {
  TopicName topic = require(name);
  topics_.erase(std::find(topics_.begin(), topics_.end(), topic));
  tagsets_.erase(topic);
  std::erase_if(whitelist_, [&](const SharedTag& e) { return e.topics.contains(topic); });
  std::erase_if(removed_, [&](const RemovedTag& e) { return e.topic == topic; });
}

std::size_t TopicCatalog::add_tags(std::string_view topic_name, std::span<const std::string> tags) {
  TopicName topic = require(topic_name);
  TagSet& set = tagsets_[topic];
  std::size_t added = 0;
  for (const std::string& raw : tags) {
    std::string tag = canonical_tag(raw);
    if (tag.empty()) continue;
    if (set.insert(std::move(tag)).second) ++added;
  }
  return added;
}

bool TopicCatalog::remove_tag(const TopicName& topic, std::string_view tag) {
  auto it = tagsets_.find(topic);
  if (it == tagsets_.end()) return false;
  auto tag_it = it->second.find(tag);
  if (tag_it == it->second.end()) return false;
  it->second.erase(tag_it);
  return true;
}

void TopicCatalog::add_whitelist(SharedTag entry) {
  for (const TopicName& t : entry.topics) {
    if (!contains(t)) {
      throw Error(ErrorKind::kNotFound, "whitelist names unknown topic '" + t.str() + "'");
    }
  }
  whitelist_.insert(std::move(entry));
}

bool TopicCatalog::is_whitelisted(std::string_view tag, const std::set<TopicName>& topics) const {
  return whitelist_.contains(SharedTag{std::string(tag), topics});
}

void TopicCatalog::record_removal(std::string_view tag, const TopicName& topic) {
  removed_.insert(RemovedTag{std::string(tag), topic});
}

bool TopicCatalog::was_removed(std::string_view tag, const TopicName& topic) const {
  return removed_.contains(RemovedTag{std::string(tag), topic});
}

CatalogPaths CatalogPaths::beside(const std::filesystem::path& topics,
                                  const std::filesystem::path& tags_dir) {
  const auto dir = topics.parent_path();
  return CatalogPaths{topics, tags_dir, dir / "whitelist.csv", dir / "removed.csv"};
}

std::filesystem::path CatalogPaths::tag_file(const TopicName& topic) const {
  return tags_dir / (topic.file_stem() + ".csv");
}

namespace {

bool skip_line(std::string_view line) {
  std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

// Lines of `head,topic,topic,...` as used by whitelist.csv and removed.csv.
std::vector<std::pair<std::string, std::vector<std::string>>> read_keyed_lists(
    const std::filesystem::path& path) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const std::string& line : read_lines(path)) {
    if (skip_line(line)) continue;
    auto fields = split_csv_line(line);
    std::pair<std::string, std::vector<std::string>> rec;
    rec.first = canonical_tag(fields.front());
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (!trim(fields[i]).empty()) rec.second.push_back(fields[i]);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void read_tag_fields(const std::filesystem::path& path, std::vector<std::string>& tags,
                     std::size_t& skipped) {
  for (const std::string& line : read_lines(path)) {
    for (const std::string& field : split_csv_line(line)) {
      if (trim(field).empty()) continue;
      std::string tag = canonical_tag(field);
      if (tag.empty()) {
        ++skipped;
        continue;
      }
      tags.push_back(std::move(tag));
    }
  }
}

}  // namespace

CatalogLoad load_catalog(const CatalogPaths& paths) {
  if (!std::filesystem::is_regular_file(paths.topics)) {
    throw Error(ErrorKind::kIo, "topics file not found: " + paths.topics.string());
  }
  CatalogLoad result;
  TopicCatalog& catalog = result.catalog;

  for (const std::string& line : read_lines(paths.topics)) {
    if (skip_line(line)) continue;
    for (const std::string& field : split_csv_line(line)) {
      if (trim(field).empty()) continue;
      try {
        catalog.add_topic(field);
      } catch (const Error& e) {
        result.warnings.push_back(std::string("topics: ") + e.what());
      }
    }
  }

  for (const TopicName& topic : catalog.topics()) {
    const auto file = paths.tag_file(topic);
    if (!std::filesystem::is_regular_file(file)) {
      throw Error(ErrorKind::kIo,
                  "tag file for topic '" + topic.str() + "' not found: " + file.string());
    }
    std::vector<std::string> tags;
    std::size_t skipped = 0;
    read_tag_fields(file, tags, skipped);
    if (skipped > 0) {
      result.warnings.push_back(topic.str() + ": skipped " + std::to_string(skipped) +
                                " malformed tag(s)");
      result.skipped_tags += skipped;
    }
    catalog.add_tags(topic.str(), tags);
  }

  if (std::filesystem::is_regular_file(paths.whitelist)) {
    for (auto& [tag, names] : read_keyed_lists(paths.whitelist)) {
      SharedTag entry{tag, {}};
      bool valid = !tag.empty() && names.size() >= 2;
      for (const std::string& n : names) {
        try {
          TopicName t = TopicName::parse(n);
          if (!catalog.contains(t)) valid = false;
          entry.topics.insert(std::move(t));
        } catch (const Error&) {
          valid = false;
        }
      }
      if (valid) {
        catalog.add_whitelist(std::move(entry));
      } else {
        result.warnings.push_back("whitelist: dropped entry for '" + tag + "'");
      }
    }
  }

  if (std::filesystem::is_regular_file(paths.removed)) {
    for (auto& [tag, names] : read_keyed_lists(paths.removed)) {
      for (const std::string& n : names) {
        try {
          TopicName t = TopicName::parse(n);
          if (!tag.empty() && catalog.contains(t)) {
            catalog.record_removal(tag, t);
            continue;
          }
        } catch (const Error&) {
        }
        result.warnings.push_back("removed: dropped entry for '" + tag + "'");
      }
    }
  }
  return result;
}

void save_catalog(const TopicCatalog& catalog, const CatalogPaths& paths) {
  std::error_code ec;
  std::filesystem::create_directories(paths.tags_dir, ec);
  if (ec || !std::filesystem::is_directory(paths.tags_dir)) {
    throw Error(ErrorKind::kIo, "cannot create tags directory " + paths.tags_dir.string());
  }

  AtomicWriteBatch batch;
  for (const TopicName& topic : catalog.topics()) {
    std::string body;
    for (const std::string& tag : catalog.tags(topic)) body += tag + "\n";
    batch.stage(paths.tag_file(topic), body);
  }

  std::string whitelist;
  for (const SharedTag& e : catalog.whitelist()) {
    whitelist += e.tag;
    for (const TopicName& t : e.topics) whitelist += "," + t.str();
    whitelist += "\n";
  }
  batch.stage(paths.whitelist, whitelist);

  std::map<std::string, std::vector<std::string>> removed;
  for (const RemovedTag& r : catalog.removed()) removed[r.tag].push_back(r.topic.str());
  std::string removed_body;
  for (const auto& [tag, topics] : removed) {
    removed_body += tag;
    for (const std::string& t : topics) removed_body += "," + t;
    removed_body += "\n";
  }
  batch.stage(paths.removed, removed_body);

  std::string topics;
  for (const TopicName& topic : catalog.topics()) topics += topic.str() + "\n";
  batch.stage(paths.topics, topics);

  batch.commit();
}

const AmbiguousTag* AmbiguityReport::find(std::string_view tag) const {
  for (const AmbiguousTag& e : entries) {
    if (e.tag == tag) return &e;
  }
  return nullptr;
}

AmbiguityReport detect_ambiguous(const TopicCatalog& catalog) {
  std::map<std::string, std::vector<TopicName>, std::less<>> owners;
  for (const TopicName& topic : catalog.topics()) {
    for (const std::string& tag : catalog.tags(topic)) owners[tag].push_back(topic);
  }
  AmbiguityReport report;
  for (auto& [tag, topics] : owners) {
    if (topics.size() < 2) continue;
    std::set<TopicName> key(topics.begin(), topics.end());
    if (catalog.is_whitelisted(tag, key)) continue;
    report.entries.push_back(AmbiguousTag{tag, std::move(topics)});
  }
  return report;
}

namespace {

std::set<TopicName> topics_holding(const TopicCatalog& catalog, std::string_view tag) {
  std::set<TopicName> out;
  for (const TopicName& t : catalog.topics()) {
    if (catalog.tags(t).contains(tag)) out.insert(t);
  }
  return out;
}

}  // namespace

ResolveOutcome resolve_ambiguity(TopicCatalog& catalog, std::span<const TriageDecision> decisions) {
  const AmbiguityReport report = detect_ambiguous(catalog);
  ResolveOutcome outcome;

  for (const TriageDecision& d : decisions) {
    const std::string tag = canonical_tag(d.tag);
    if (report.find(tag) == nullptr) {
      outcome.warnings.push_back("'" + d.tag + "' is not in the ambiguity report; skipped");
      continue;
    }
    std::set<TopicName> holders = topics_holding(catalog, tag);
    switch (d.action) {
      case TriageDecision::Action::kWhitelist:
        if (holders.size() >= 2) catalog.add_whitelist(SharedTag{tag, holders});
        break;
      case TriageDecision::Action::kRemoveEverywhere:
        for (const TopicName& t : holders) {
          catalog.remove_tag(t, tag);
          catalog.record_removal(tag, t);
        }
        break;
      case TriageDecision::Action::kRemoveFrom: {
        if (d.topics.empty()) {
          outcome.warnings.push_back("'" + tag + "': remove without topics; skipped");
          continue;
        }
        for (const TopicName& t : d.topics) {
          if (!catalog.remove_tag(t, tag)) {
            outcome.warnings.push_back("'" + tag + "' is not a tag of '" + t.str() + "'");
            continue;
          }
          catalog.record_removal(tag, t);
        }
        // Whatever the trainer left in place is the intended sharing.
        std::set<TopicName> remaining = topics_holding(catalog, tag);
        if (remaining.size() >= 2) catalog.add_whitelist(SharedTag{tag, remaining});
        break;
      }
    }
    ++outcome.applied;
  }
  return outcome;
}

RedundantWordStore::RedundantWordStore(std::span<const std::string> words) { add(words); }

RedundantWordStore RedundantWordStore::load(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorKind::kIo, "redundant word file not found: " + path.string());
  }
  std::vector<std::string> words;
  std::size_t skipped = 0;
  read_tag_fields(path, words, skipped);
  return RedundantWordStore(words);
}

void RedundantWordStore::save(const std::filesystem::path& path) const {
  std::string body;
  for (const std::string& w : words_) body += w + "\n";
  write_file_atomic(path, body);
}

std::size_t RedundantWordStore::add(std::span<const std::string> words) {
  std::size_t added = 0;
  for (const std::string& raw : words) {
    std::string w = canonical_tag(raw);
    if (w.empty()) continue;
    if (words_.insert(std::move(w)).second) ++added;
  }
  return added;
}

}  // namespace eicv
