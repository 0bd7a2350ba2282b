#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "eicv/scorer.hpp"

namespace eicv {

enum class InputKind { kText, kUser };

struct LabeledCase {
  InputKind kind = InputKind::kText;
  std::string input;
  std::vector<TopicName> gold;  // empty: "no topic matched" is the right answer

  bool expects_none() const noexcept { return gold.empty(); }
};

// Clusters of related topics (e.g. games). A topic is in at most one group.
class TopicGroups {
 public:
  static TopicGroups load(const std::filesystem::path& path);

  // Throws Error{kValidation} if a topic is already grouped.
  void add_group(std::string name, const std::vector<TopicName>& topics);

  std::optional<std::string> group_of(const TopicName& topic) const;
  bool share_group(const TopicName& a, const TopicName& b) const;
  bool empty() const noexcept { return group_of_.empty(); }

 private:
  std::map<std::string, std::set<TopicName>> groups_;
  std::map<TopicName, std::string> group_of_;
};

enum class Verdict { kCorrect, kIncorrect };

struct Judgement {
  Verdict verdict = Verdict::kIncorrect;
  std::string reason;
};

// Correct when the gold is NONE and nothing matched, or when a gold topic
// ranks first or second and every matched topic is gold or shares a group
// with a gold topic.
Judgement judge(const std::vector<TopicName>& matched, const LabeledCase& gold,
                const TopicGroups& groups);
Judgement judge(const ClassificationResult& prediction, const LabeledCase& gold,
                const TopicGroups& groups);

struct CaseOutcome {
  LabeledCase input;
  std::vector<TopicName> prediction;
  std::optional<std::string> error;  // classification failure
  Judgement judgement;
};

struct EvalReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::vector<CaseOutcome> per_case;

  // correct * 100 / total rounded half-up to two decimals, e.g. "93.03".
  std::string accuracy_percent() const;
};

std::string format_accuracy(std::size_t correct, std::size_t total);

// Aggregates already judged cases. Throws Error{kValidation} when empty.
EvalReport summarize(std::vector<CaseOutcome> outcomes);

// Reads `input_kind,input,gold` CSV rows; gold is ';'-separated or NONE.
// A first row starting with "input_kind" is treated as a header.
std::vector<LabeledCase> load_dataset(const std::filesystem::path& path);

// Classification failures count as incorrect cases. Throws
// Error{kValidation} for an empty dataset or gold topics outside the
// catalog.
EvalReport evaluate(std::span<const LabeledCase> dataset, const TopicCatalog& catalog,
                    const SearchBackend& backend, const RedundantWordStore& store,
                    const ClassifyOptions& options, const TopicGroups& groups);

nlohmann::ordered_json to_json(const EvalReport& report);

}  // namespace eicv
