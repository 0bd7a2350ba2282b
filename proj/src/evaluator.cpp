#include "eicv/evaluator.hpp"

#include <algorithm>
#include <cstdio>

#include "eicv/error.hpp"
#include "eicv/files.hpp"
#include "eicv/strings.hpp"

namespace eicv {

TopicGroups TopicGroups::load(const std::filesystem::path& path) {
  TopicGroups groups;
  for (const std::string& line : read_lines(path)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split_csv_line(line);
    std::string name = canonicalize(fields.front());
    if (name.empty()) throw Error(ErrorKind::kValidation, "groups: empty group name");
    std::vector<TopicName> topics;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (!trim(fields[i]).empty()) topics.push_back(TopicName::parse(fields[i]));
    }
    groups.add_group(std::move(name), topics);
  }
  return groups;
}

void TopicGroups::add_group(std::string name, const std::vector<TopicName>& topics) {
  for (const TopicName& t : topics) {
    auto it = group_of_.find(t);
    if (it != group_of_.end() && it->second != name) {
      throw Error(ErrorKind::kValidation, "topic '" + t.str() + "' is in groups '" + it->second +
                                              "' and '" + name + "'");
    }
  }
  auto& members = groups_[name];
  for (const TopicName& t : topics) {
    members.insert(t);
    group_of_.insert_or_assign(t, name);
  }
}

std::optional<std::string> TopicGroups::group_of(const TopicName& topic) const {
  auto it = group_of_.find(topic);
  if (it == group_of_.end()) return std::nullopt;
  return it->second;
}

bool TopicGroups::share_group(const TopicName& a, const TopicName& b) const {
  auto ga = group_of(a);
  return ga && ga == group_of(b);
}

Judgement judge(const std::vector<TopicName>& matched, const LabeledCase& gold,
                const TopicGroups& groups) {
  if (gold.expects_none()) {
    if (matched.empty()) return {Verdict::kCorrect, "no topic matched, as expected"};
    return {Verdict::kIncorrect,
            "expected no topic, got " + std::to_string(matched.size()) + " topic(s)"};
  }
  if (matched.empty()) return {Verdict::kIncorrect, "no topic matched"};

  auto is_gold = [&](const TopicName& t) {
    return std::find(gold.gold.begin(), gold.gold.end(), t) != gold.gold.end();
  };
  const std::size_t top = std::min<std::size_t>(2, matched.size());
  if (!std::any_of(matched.begin(), matched.begin() + static_cast<std::ptrdiff_t>(top), is_gold)) {
    return {Verdict::kIncorrect, "no gold topic at rank 1 or 2"};
  }
  for (const TopicName& m : matched) {
    if (is_gold(m)) continue;
    const bool grouped = std::any_of(gold.gold.begin(), gold.gold.end(),
                                     [&](const TopicName& g) { return groups.share_group(m, g); });
    if (!grouped) {
      return {Verdict::kIncorrect, "'" + m.str() + "' is neither gold nor grouped with a gold topic"};
    }
  }
  return {Verdict::kCorrect, "gold topic ranked within the top two"};
}

Judgement judge(const ClassificationResult& prediction, const LabeledCase& gold,
                const TopicGroups& groups) {
  return judge(prediction.matched, gold, groups);
}

std::string format_accuracy(std::size_t correct, std::size_t total) {
  if (total == 0) throw Error(ErrorKind::kValidation, "accuracy of an empty dataset");
  const unsigned long long hundredths =
      (static_cast<unsigned long long>(correct) * 20000ULL + total) / (2ULL * total);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu.%02llu", hundredths / 100, hundredths % 100);
  return buf;
}

std::string EvalReport::accuracy_percent() const { return format_accuracy(correct, total); }

EvalReport summarize(std::vector<CaseOutcome> outcomes) {
  if (outcomes.empty()) throw Error(ErrorKind::kValidation, "dataset is empty");
  EvalReport report;
  report.total = outcomes.size();
  report.correct = static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(),
                    [](const CaseOutcome& c) { return c.judgement.verdict == Verdict::kCorrect; }));
  report.per_case = std::move(outcomes);
  return report;
}

std::vector<LabeledCase> load_dataset(const std::filesystem::path& path) {
  std::vector<LabeledCase> cases;
  bool first = true;
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split_csv_line(line);
    const std::string kind = canonicalize(fields.front());
    if (first && kind == "input_kind") {
      first = false;
      continue;
    }
    first = false;
    auto where = [&] { return path.filename().string() + ":" + std::to_string(line_no); };
    if (fields.size() != 3) {
      throw Error(ErrorKind::kValidation, where() + ": expected 3 fields, got " +
                                              std::to_string(fields.size()));
    }
    LabeledCase c;
    if (kind == "text") {
      c.kind = InputKind::kText;
    } else if (kind == "user") {
      c.kind = InputKind::kUser;
    } else {
      throw Error(ErrorKind::kValidation, where() + ": unknown input kind '" + kind + "'");
    }
    c.input = fields[1];
    if (trim(c.input).empty()) throw Error(ErrorKind::kValidation, where() + ": empty input");
    const std::string gold = std::string(trim(fields[2]));
    if (gold != "NONE") {
      std::size_t pos = 0;
      while (pos <= gold.size()) {
        std::size_t semi = gold.find(';', pos);
        if (semi == std::string::npos) semi = gold.size();
        std::string_view part = trim(std::string_view(gold).substr(pos, semi - pos));
        if (!part.empty()) c.gold.push_back(TopicName::parse(part));
        pos = semi + 1;
      }
      if (c.gold.empty()) throw Error(ErrorKind::kValidation, where() + ": empty gold");
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

EvalReport evaluate(std::span<const LabeledCase> dataset, const TopicCatalog& catalog,
                    const SearchBackend& backend, const RedundantWordStore& store,
                    const ClassifyOptions& options, const TopicGroups& groups) {
  if (dataset.empty()) throw Error(ErrorKind::kValidation, "dataset is empty");
  for (const LabeledCase& c : dataset) {
    for (const TopicName& g : c.gold) {
      if (!catalog.contains(g)) {
        throw Error(ErrorKind::kValidation, "gold topic '" + g.str() + "' is not in the catalog");
      }
    }
  }

  std::vector<CaseOutcome> outcomes;
  outcomes.reserve(dataset.size());
  for (const LabeledCase& c : dataset) {
    CaseOutcome outcome{c, {}, std::nullopt, {}};
    try {
      ClassificationResult r = c.kind == InputKind::kText
                                   ? classify(Tweet{c.input, {}, {}, {}, {}}, catalog, backend, store, options)
                                   : classify_user(c.input, catalog, backend, store, options);
      outcome.prediction = r.matched;
      outcome.judgement = judge(r, c, groups);
    } catch (const Error& e) {
      outcome.error = e.what();
      outcome.judgement = {Verdict::kIncorrect, std::string("classification failed: ") + e.what()};
    }
    outcomes.push_back(std::move(outcome));
  }
  return summarize(std::move(outcomes));
}

nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["total"] = report.total;
  j["correct"] = report.correct;
  j["accuracy_percent"] = report.accuracy_percent();
  j["cases"] = nlohmann::ordered_json::array();
  for (const CaseOutcome& c : report.per_case) {
    nlohmann::ordered_json item;
    item["kind"] = c.input.kind == InputKind::kText ? "text" : "user";
    item["input"] = c.input.input;
    item["gold"] = nlohmann::ordered_json::array();
    if (c.input.expects_none()) {
      item["gold"].push_back("NONE");
    } else {
      for (const TopicName& g : c.input.gold) item["gold"].push_back(g.str());
    }
    item["prediction"] = nlohmann::ordered_json::array();
    for (const TopicName& p : c.prediction) item["prediction"].push_back(p.str());
    item["verdict"] = c.judgement.verdict == Verdict::kCorrect ? "correct" : "incorrect";
    item["reason"] = c.judgement.reason;
    if (c.error) item["error"] = *c.error;
    j["cases"].push_back(std::move(item));
  }
  return j;
}

}  // namespace eicv
