#include "commands.hpp"

#include <cstdlib>
#include <iostream>
#include <memory>

#include "eicv/error.hpp"
#include "eicv/evaluator.hpp"
#include "eicv/files.hpp"
#include "eicv/knowledge_source.hpp"
#include "eicv/lexicon_store.hpp"
#include "eicv/scorer.hpp"
#include "eicv/strings.hpp"
#include "eicv/tag_expander.hpp"
#ifdef EICV_WITH_LIVE_ADAPTERS
#include "eicv/live_adapters.hpp"
#endif

namespace eicv::cli {

namespace {

CatalogPaths catalog_paths(const Context& ctx) {
  return CatalogPaths{ctx.paths.topics, ctx.paths.tags_dir, ctx.paths.whitelist, ctx.paths.removed};
}

TopicCatalog load(const Context& ctx, bool allow_missing = false) {
  if (allow_missing && !fs::exists(ctx.paths.topics)) return {};
  CatalogLoad loaded = load_catalog(catalog_paths(ctx));
  for (const std::string& w : loaded.warnings) *ctx.err << "warning: " << w << "\n";
  return std::move(loaded.catalog);
}

RedundantWordStore load_redundant(const Context& ctx) {
  if (!fs::exists(ctx.paths.redword)) return {};
  return RedundantWordStore::load(ctx.paths.redword);
}

fs::path pending_file(const Context& ctx, const TopicName& topic) {
  return ctx.paths.tags_dir / "pending" / (topic.file_stem() + ".csv");
}

std::string join(const std::vector<TopicName>& topics, const char* sep) {
  std::string out;
  for (const TopicName& t : topics) {
    if (!out.empty()) out += sep;
    out += t.str();
  }
  return out;
}

std::unique_ptr<RelatedWordsProvider> make_provider(const Context& ctx) {
  if (ctx.live) {
#ifdef EICV_WITH_LIVE_ADAPTERS
    return make_datamuse_provider(ctx.config.provider);
#else
    throw Error(ErrorKind::kValidation, "built without live adapters");
#endif
  }
  return std::make_unique<RelatedWordsTable>(RelatedWordsTable::load(ctx.paths.related));
}

// Owns whichever backend the context asks for.
struct Knowledge {
  CorpusIndex index;
  std::unique_ptr<SearchBackend> backend;
};

CorpusIndex load_index(const Context& ctx) {
  const bool have_cache = fs::is_regular_file(ctx.paths.index);
  const bool have_corpus = fs::is_regular_file(ctx.paths.corpus);
  if (have_cache &&
      (!have_corpus || fs::last_write_time(ctx.paths.index) >= fs::last_write_time(ctx.paths.corpus))) {
    try {
      return CorpusIndex::load(ctx.paths.index);
    } catch (const Error& e) {
      if (!have_corpus) throw;
      *ctx.err << "warning: " << e.what() << "; re-indexing\n";
    }
  }
  if (!have_corpus) throw Error(ErrorKind::kIo, "corpus not found: " + ctx.paths.corpus.string());
  IndexedCorpus built = eicv::index_corpus(ctx.paths.corpus);
  if (built.malformed_lines > 0) {
    *ctx.err << "warning: skipped " << built.malformed_lines << " malformed corpus line(s)\n";
  }
  return std::move(built.index);
}

std::unique_ptr<Knowledge> open_knowledge(const Context& ctx) {
  auto k = std::make_unique<Knowledge>();
  if (ctx.live) {
#ifdef EICV_WITH_LIVE_ADAPTERS
    TwitterSettings settings;
    if (const char* token = std::getenv("KNOWLEDGE_API_TOKEN")) settings.bearer_token = token;
    settings.timeout_ms = ctx.config.provider.timeout_ms;
    k->backend = make_twitter_backend(settings);
    return k;
#else
    throw Error(ErrorKind::kValidation, "built without live adapters");
#endif
  }
  k->index = load_index(ctx);
  k->backend = std::make_unique<CorpusBackend>(k->index);
  return k;
}

void print_report(const Context& ctx, const AmbiguityReport& report) {
  for (const AmbiguousTag& e : report.entries) {
    *ctx.out << "  " << e.tag << ": " << join(e.topics, ", ") << "\n";
  }
}

}  // namespace

int topics_add(const Context& ctx, const std::string& name) {
  TopicCatalog catalog = load(ctx, /*allow_missing=*/true);
  const TopicName topic = catalog.add_topic(name);
  save_catalog(catalog, catalog_paths(ctx));
  *ctx.out << "added topic " << topic.str() << "\n";
  return kOk;
}

int topics_remove(const Context& ctx, const std::string& name) {
  TopicCatalog catalog = load(ctx);
  catalog.remove_topic(name);
  save_catalog(catalog, catalog_paths(ctx));
  *ctx.out << "removed topic " << TopicName::parse(name).str() << "\n";
  return kOk;
}

int topics_list(const Context& ctx) {
  const TopicCatalog catalog = load(ctx);
  for (const TopicName& t : catalog.topics()) {
    *ctx.out << t.str() << "\t" << catalog.tags(t).size() << "\n";
  }
  return kOk;
}

int tags_expand(const Context& ctx, const std::optional<std::string>& topic,
                std::optional<std::size_t> limit) {
  const TopicCatalog catalog = load(ctx);
  ExpandOptions options = ctx.config.expand;
  if (limit) options.limit = *limit;
  auto provider = make_provider(ctx);

  Expansion expansion;
  if (topic) {
    const TopicName name = TopicName::parse(*topic);
    std::vector<std::string> candidates = expand_topic(catalog, name.str(), *provider, options);
    TopicCatalog hypothetical = catalog;
    hypothetical.add_tags(name.str(), candidates);
    expansion.candidates.emplace_back(name, std::move(candidates));
    expansion.hypothetical = detect_ambiguous(hypothetical);
  } else {
    expansion = expand_all(catalog, *provider, options);
  }

  AtomicWriteBatch batch;
  std::error_code ec;
  fs::create_directories(ctx.paths.tags_dir / "pending", ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + (ctx.paths.tags_dir / "pending").string());
  for (const auto& [name, candidates] : expansion.candidates) {
    std::string body;
    for (const std::string& c : candidates) body += c + "\n";
    batch.stage(pending_file(ctx, name), body);
    *ctx.out << name.str() << ": " << candidates.size() << " candidate(s)\n";
    for (const std::string& c : candidates) *ctx.out << "  " << c << "\n";
  }
  batch.commit();

  for (const auto& [name, message] : expansion.errors) {
    *ctx.err << "error: " << name.str() << ": " << message << "\n";
  }
  if (!expansion.hypothetical.empty()) {
    *ctx.out << "ambiguous if committed:\n";
    print_report(ctx, expansion.hypothetical);
  }
  return expansion.errors.empty() ? kOk : kDomainError;
}

namespace {

std::optional<TriageDecision> parse_decision(const std::vector<std::string>& fields,
                                             std::vector<std::string>& warnings) {
  if (fields.size() < 2) {
    warnings.push_back("decision without action: " + (fields.empty() ? "" : fields.front()));
    return std::nullopt;
  }
  TriageDecision d;
  d.tag = canonical_tag(fields[0]);
  const std::string action = canonicalize(fields[1]);
  if (action == "keep") return std::nullopt;
  if (action == "whitelist") {
    d.action = TriageDecision::Action::kWhitelist;
  } else if (action == "remove") {
    d.action = TriageDecision::Action::kRemoveEverywhere;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      if (trim(fields[i]).empty()) continue;
      d.topics.push_back(TopicName::parse(fields[i]));
      d.action = TriageDecision::Action::kRemoveFrom;
    }
  } else {
    warnings.push_back("unknown action '" + action + "' for '" + d.tag + "'");
    return std::nullopt;
  }
  return d;
}

}  // namespace

int tags_triage(const Context& ctx, const std::optional<fs::path>& decisions_file) {
  TopicCatalog catalog = load(ctx);
  const AmbiguityReport report = detect_ambiguous(catalog);
  if (report.empty()) {
    *ctx.out << "no ambiguity\n";
    return kOk;
  }

  std::vector<TriageDecision> decisions;
  std::vector<std::string> warnings;
  if (decisions_file) {
    for (const std::string& line : read_lines(*decisions_file)) {
      if (trim(line).empty() || trim(line).front() == '#') continue;
      if (auto d = parse_decision(split_csv_line(line), warnings)) decisions.push_back(std::move(*d));
    }
  } else {
    for (const AmbiguousTag& entry : report.entries) {
      *ctx.out << "'" << entry.tag << "' is a tag of: " << join(entry.topics, ", ") << "\n"
               << "  [k]eep, [w]hitelist, [r]emove everywhere, remove from [t]opics, [q]uit: "
               << std::flush;
      std::string answer;
      if (!std::getline(*ctx.in, answer) || canonicalize(answer) == "q") {
        *ctx.out << "\ntriage aborted; lexicons unchanged\n";
        return kDomainError;
      }
      const std::string a = canonicalize(answer);
      if (a == "w") {
        decisions.push_back({entry.tag, TriageDecision::Action::kWhitelist, {}});
      } else if (a == "r") {
        decisions.push_back({entry.tag, TriageDecision::Action::kRemoveEverywhere, {}});
      } else if (a == "t") {
        *ctx.out << "  topics to remove it from (comma separated): " << std::flush;
        std::string line;
        if (!std::getline(*ctx.in, line)) {
          *ctx.out << "\ntriage aborted; lexicons unchanged\n";
          return kDomainError;
        }
        TriageDecision d{entry.tag, TriageDecision::Action::kRemoveFrom, {}};
        for (const std::string& f : split_csv_line(line)) {
          if (!trim(f).empty()) d.topics.push_back(TopicName::parse(f));
        }
        decisions.push_back(std::move(d));
      }
    }
  }

  const ResolveOutcome outcome = resolve_ambiguity(catalog, decisions);
  save_catalog(catalog, catalog_paths(ctx));
  for (const std::string& w : warnings) *ctx.err << "warning: " << w << "\n";
  for (const std::string& w : outcome.warnings) *ctx.err << "warning: " << w << "\n";
  *ctx.out << "applied " << outcome.applied << " decision(s)\n";
  const AmbiguityReport remaining = detect_ambiguous(catalog);
  if (!remaining.empty()) {
    *ctx.out << remaining.entries.size() << " ambiguous tag(s) remain:\n";
    print_report(ctx, remaining);
  }
  return kOk;
}

int tags_add(const Context& ctx, const std::string& topic, const std::vector<std::string>& tags,
             bool from_pending) {
  TopicCatalog catalog = load(ctx);
  const TopicName name = TopicName::parse(topic);
  std::vector<std::string> incoming = tags;
  const fs::path pending = pending_file(ctx, name);
  if (from_pending) {
    if (!fs::is_regular_file(pending)) {
      throw Error(ErrorKind::kIo, "no pending candidates for '" + name.str() + "'");
    }
    for (const std::string& line : read_lines(pending)) {
      for (const std::string& f : split_csv_line(line)) incoming.push_back(f);
    }
  }
  const std::size_t added = catalog.add_tags(name.str(), incoming);
  save_catalog(catalog, catalog_paths(ctx));
  if (from_pending) {
    std::error_code ec;
    fs::remove(pending, ec);
  }
  *ctx.out << "added " << added << " tag(s) to " << name.str() << "\n";
  return kOk;
}

int tags_list(const Context& ctx, const std::string& topic) {
  const TopicCatalog catalog = load(ctx);
  for (const std::string& tag : catalog.tags(TopicName::parse(topic))) *ctx.out << tag << "\n";
  return kOk;
}

int index_corpus(const Context& ctx, const fs::path& out) {
  IndexedCorpus built = eicv::index_corpus(ctx.paths.corpus);
  for (const std::string& w : built.warnings) *ctx.err << "warning: " << w << "\n";
  built.index.save(out);
  *ctx.out << "indexed " << built.index.size() << " tweet(s)";
  if (built.malformed_lines > 0) *ctx.out << ", skipped " << built.malformed_lines << " malformed line(s)";
  *ctx.out << " -> " << out.string() << "\n";
  return kOk;
}

int classify(const Context& ctx, const std::optional<std::string>& text,
             const std::optional<std::string>& user, bool learn) {
  const TopicCatalog catalog = load(ctx);
  RedundantWordStore store = load_redundant(ctx);
  auto knowledge = open_knowledge(ctx);

  const ClassificationResult result =
      text ? eicv::classify(Tweet{*text, {}, {}, {}, {}}, catalog, *knowledge->backend, store,
                            ctx.config.classify)
           : classify_user(*user, catalog, *knowledge->backend, store, ctx.config.classify);

  if (ctx.json) {
    *ctx.out << to_json(result).dump(2) << "\n";
  } else if (result.matched.empty()) {
    *ctx.out << "No topic matched\n";
  } else {
    for (const TopicName& t : result.matched) *ctx.out << t.str() << "\n";
  }

  if (learn) {
    const std::size_t n = learn_redundant(store, result.diagnostics.keywords.discarded, ctx.paths.redword);
    *ctx.err << "learned " << n << " redundant word(s)\n";
  }
  return kOk;
}

int evaluate(const Context& ctx, const fs::path& dataset_path) {
  const std::vector<LabeledCase> dataset = load_dataset(dataset_path);
  if (dataset.empty()) throw Error(ErrorKind::kValidation, "dataset is empty");
  const TopicCatalog catalog = load(ctx);
  const RedundantWordStore store = load_redundant(ctx);
  const TopicGroups groups =
      fs::exists(ctx.paths.groups) ? TopicGroups::load(ctx.paths.groups) : TopicGroups{};
  auto knowledge = open_knowledge(ctx);

  const EvalReport report =
      eicv::evaluate(dataset, catalog, *knowledge->backend, store, ctx.config.classify, groups);
  if (ctx.json) {
    *ctx.out << to_json(report).dump(2) << "\n";
    return kOk;
  }
  *ctx.out << report.correct << "/" << report.total << " = " << report.accuracy_percent() << "%\n";
  for (std::size_t i = 0; i < report.per_case.size(); ++i) {
    const CaseOutcome& c = report.per_case[i];
    if (c.judgement.verdict == Verdict::kCorrect) continue;
    *ctx.out << "  FAIL #" << (i + 1) << " \"" << c.input.input << "\" -> ["
             << join(c.prediction, ", ") << "]: " << c.judgement.reason << "\n";
  }
  return kOk;
}

}  // namespace eicv::cli
