#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "eicv/error.hpp"

using namespace eicv;
using namespace eicv::cli;

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kIoError;
    case ErrorKind::kNoTweet: return kNotFound;
    default: return kDomainError;
  }
}

fs::path or_default(const std::string& given, const fs::path& fallback) {
  return given.empty() ? fallback : fs::path(given);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Match tweets to advertisement topics by entity/tag intersection"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, topics = "topics.csv", tags_dir, corpus, index, redword, whitelist,
                           removed, related, groups;
  bool json = false;
  bool live = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--topics", topics, "Topics file")->capture_default_str();
  app.add_option("--tags-dir", tags_dir, "Directory of per-topic tag files (default: <topics dir>/tags)");
  app.add_option("--corpus", corpus, "Tweet corpus JSONL (default: <topics dir>/corpus.jsonl)");
  app.add_option("--index", index, "Index cache (default: <corpus>.idx)");
  app.add_option("--redword", redword, "Redundant word list (default: <topics dir>/redword.csv)");
  app.add_option("--whitelist", whitelist, "Shared-tag whitelist (default: <topics dir>/whitelist.csv)");
  app.add_option("--removed", removed, "Removed-tag ledger (default: <topics dir>/removed.csv)");
  app.add_option("--related", related, "Related words table (default: <topics dir>/related_words.tsv)");
  app.add_option("--groups", groups, "Topic groups (default: <topics dir>/groups.csv)");
  app.add_flag("--json", json, "Machine-readable output");
  app.add_flag("--live", live, "Use the HTTP provider/backend instead of local files");

  // topics
  auto* topics_cmd = app.add_subcommand("topics", "Manage advertisement topics");
  topics_cmd->require_subcommand(1);
  std::string topic_name;
  auto* topics_add_cmd = topics_cmd->add_subcommand("add", "Add a topic");
  topics_add_cmd->add_option("name", topic_name, "Topic name")->required();
  auto* topics_remove_cmd = topics_cmd->add_subcommand("remove", "Remove a topic");
  topics_remove_cmd->add_option("name", topic_name, "Topic name")->required();
  auto* topics_list_cmd = topics_cmd->add_subcommand("list", "List topics with tag counts");

  // tags
  auto* tags_cmd = app.add_subcommand("tags", "Generate, triage, and commit tags");
  tags_cmd->require_subcommand(1);
  std::optional<std::string> expand_topic;
  std::optional<std::size_t> expand_limit;
  auto* tags_expand_cmd = tags_cmd->add_subcommand("expand", "Propose candidate tags into pending files");
  tags_expand_cmd->add_option("--topic", expand_topic, "Only this topic");
  tags_expand_cmd->add_option("--limit", expand_limit, "Candidates requested per topic")
      ->check(CLI::PositiveNumber);
  std::optional<std::string> decisions;
  auto* tags_triage_cmd = tags_cmd->add_subcommand("triage", "Resolve tags shared by several topics");
  tags_triage_cmd->add_option("--decisions", decisions,
                              "Non-interactive decisions: tag,whitelist | tag,remove[,topic...] | tag,keep");
  std::string add_topic;
  std::vector<std::string> add_literal;
  bool add_pending = false;
  auto* tags_add_cmd = tags_cmd->add_subcommand("add", "Commit pending or literal tags");
  tags_add_cmd->add_option("--topic", add_topic, "Topic")->required();
  tags_add_cmd->add_flag("--pending", add_pending, "Commit the pending candidates");
  tags_add_cmd->add_option("tags", add_literal, "Tags to add");
  std::string list_topic;
  auto* tags_list_cmd = tags_cmd->add_subcommand("list", "Print a topic's tags");
  tags_list_cmd->add_option("--topic", list_topic, "Topic")->required();

  // index
  std::string index_out;
  auto* index_cmd = app.add_subcommand("index", "Build the corpus index cache");
  index_cmd->add_option("--out", index_out, "Cache file (default: the --index path)");

  // classify
  std::optional<std::string> text, user;
  bool learn = false;
  auto* classify_cmd = app.add_subcommand("classify", "Find the topics a tweet is about");
  auto* text_opt = classify_cmd->add_option("--text", text, "Tweet text");
  auto* user_opt = classify_cmd->add_option("--user", user, "Classify this user's last tweet");
  text_opt->excludes(user_opt);
  classify_cmd->add_flag("--learn", learn, "Add discarded tokens to the redundant word list");

  // eval
  std::string dataset;
  auto* eval_cmd = app.add_subcommand("eval", "Score the classifier on a labeled dataset");
  eval_cmd->add_option("--dataset", dataset, "Labeled CSV")->required();

  try {
    app.parse(argc, argv);
    if (*classify_cmd && !text && !user) {
      throw CLI::RequiredError("exactly one of --text or --user");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Context ctx;
  ctx.json = json;
  ctx.live = live;
  ctx.out = &std::cout;
  ctx.err = &std::cerr;
  ctx.in = &std::cin;

  try {
    const fs::path topics_path(topics);
    const fs::path base = topics_path.parent_path();
    ctx.paths.topics = topics_path;
    ctx.paths.tags_dir = or_default(tags_dir, base / "tags");
    ctx.paths.redword = or_default(redword, base / "redword.csv");
    ctx.paths.whitelist = or_default(whitelist, base / "whitelist.csv");
    ctx.paths.removed = or_default(removed, base / "removed.csv");
    ctx.paths.corpus = or_default(corpus, base / "corpus.jsonl");
    ctx.paths.index = or_default(index, fs::path(ctx.paths.corpus.string() + ".idx"));
    ctx.paths.related = or_default(related, base / "related_words.tsv");
    ctx.paths.groups = or_default(groups, base / "groups.csv");
    if (!config_path.empty()) ctx.config = load_config(config_path);

    if (*topics_add_cmd) return topics_add(ctx, topic_name);
    if (*topics_remove_cmd) return topics_remove(ctx, topic_name);
    if (*topics_list_cmd) return topics_list(ctx);
    if (*tags_expand_cmd) return tags_expand(ctx, expand_topic, expand_limit);
    if (*tags_triage_cmd) {
      return tags_triage(ctx, decisions ? std::optional<fs::path>(*decisions) : std::nullopt);
    }
    if (*tags_add_cmd) return tags_add(ctx, add_topic, add_literal, add_pending);
    if (*tags_list_cmd) return tags_list(ctx, list_topic);
    if (*index_cmd) return cli::index_corpus(ctx, index_out.empty() ? ctx.paths.index : fs::path(index_out));
    if (*classify_cmd) return cli::classify(ctx, text, user, learn);
    if (*eval_cmd) return cli::evaluate(ctx, dataset);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsage;
}
