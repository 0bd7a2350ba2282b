#include "eicv/tag_expander.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "eicv/error.hpp"
#include "eicv/files.hpp"
#include "eicv/strings.hpp"

namespace eicv {

RelatedWordsTable RelatedWordsTable::load(const std::filesystem::path& path) {
  RelatedWordsTable table;
  for (const std::string& line : read_lines(path)) {
    if (trim(line).empty() || trim(line).front() == '#') continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 3) {
      ++table.skipped_;
      continue;
    }
    const std::string_view score_text = trim(fields[2]);
    double score = -1.0;
    auto [ptr, ec] = std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
    if (ec != std::errc{} || ptr != score_text.data() + score_text.size() || !(score >= 0.0) ||
        score > 1.0 || canonicalize(fields[0]).empty() || canonical_tag(fields[1]).empty()) {
      ++table.skipped_;
      continue;
    }
    table.add(fields[0], fields[1], score);
  }
  return table;
}

void RelatedWordsTable::add(std::string_view term, std::string_view word, double score) {
  auto& list = entries_[canonicalize(term)];
  RelatedWord entry{std::string(word), score};
  // keep scores non-increasing; equal scores stay in insertion order
  auto pos = std::upper_bound(list.begin(), list.end(), entry,
                              [](const RelatedWord& a, const RelatedWord& b) { return a.score > b.score; });
  list.insert(pos, std::move(entry));
}

std::vector<RelatedWord> RelatedWordsTable::related(std::string_view term, std::size_t limit) const {
  auto it = entries_.find(canonicalize(term));
  if (it == entries_.end()) return {};
  const std::size_t n = std::min(limit, it->second.size());
  return {it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::vector<std::string> expand_topic(const TopicCatalog& catalog, std::string_view topic_name,
                                      const RelatedWordsProvider& provider,
                                      const ExpandOptions& options) {
  if (options.limit == 0) throw Error(ErrorKind::kValidation, "expansion limit must be at least 1");
  const TopicName topic = TopicName::parse(topic_name);
  const TagSet& existing = catalog.tags(topic);

  std::vector<RelatedWord> related;
  try {
    related = provider.related(topic.str(), options.limit);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kBackend, "related words for '" + topic.str() + "': " + e.what());
  }

  std::vector<std::string> candidates;
  std::set<std::string, std::less<>> seen;
  for (const RelatedWord& r : related) {
    if (r.score < options.min_score) continue;
    std::string tag = canonical_tag(r.word);
    if (tag.empty() || existing.contains(tag) || catalog.was_removed(tag, topic)) continue;
    if (!seen.insert(tag).second) continue;
    candidates.push_back(std::move(tag));
  }
  return candidates;
}

Expansion expand_all(const TopicCatalog& catalog, const RelatedWordsProvider& provider,
                     const ExpandOptions& options) {
  Expansion out;
  TopicCatalog hypothetical = catalog;
  for (const TopicName& topic : catalog.topics()) {
    try {
      std::vector<std::string> candidates = expand_topic(catalog, topic.str(), provider, options);
      hypothetical.add_tags(topic.str(), candidates);
      out.candidates.emplace_back(topic, std::move(candidates));
    } catch (const Error& e) {
      out.errors.emplace_back(topic, e.what());
    }
  }
  out.hypothetical = detect_ambiguous(hypothetical);
  return out;
}

}  // namespace eicv
