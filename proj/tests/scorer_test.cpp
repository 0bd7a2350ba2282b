#include <gtest/gtest.h>

#include <random>

#include "eicv/error.hpp"
#include "eicv/scorer.hpp"
#include "support/oracle.hpp"

using namespace eicv;

namespace {

const std::filesystem::path kFixture = EICV_FIXTURE_DIR;

TopicName tn(const char* s) { return TopicName::parse(s); }

std::vector<TopicValue> vals(std::initializer_list<std::pair<const char*, std::size_t>> xs) {
  std::vector<TopicValue> out;
  for (auto [n, v] : xs) out.push_back(TopicValue{tn(n), v});
  return out;
}

std::vector<std::string> names(const std::vector<TopicName>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.str());
  return out;
}

class ThrowingBackend final : public SearchBackend {
 public:
  std::vector<Tweet> search_popular(std::string_view, std::size_t) const override {
    throw Error(ErrorKind::kBackend, "offline");
  }
  std::vector<Tweet> search_recent(std::string_view, std::size_t) const override { return {}; }
  std::optional<Tweet> last_tweet(std::string_view) const override { return std::nullopt; }
};

struct Fixture {
  TopicCatalog catalog;
  RedundantWordStore store;
  CorpusIndex index;

  Fixture()
      : catalog(load_catalog(CatalogPaths::beside(kFixture / "topics.csv", kFixture / "tags")).catalog),
        store(RedundantWordStore::load(kFixture / "redword.csv")),
        index(index_corpus(kFixture / "corpus.jsonl").index) {}
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST(ScoreConfig, Validate) {
  ScoreConfig c;
  EXPECT_NO_THROW(c.validate());
  c.threshold_num = 4;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.min_freq = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Entities, FrequencyFloorAndCap) {
  RankedWords ranked{{"a", 9}, {"b", 5}, {"c", 3}, {"d", 2}};
  EXPECT_EQ(build_entity_set(ranked, {}), (EntitySet{"a", "b", "c"}));
  ScoreConfig cap;
  cap.entity_cap = 2;
  EXPECT_EQ(build_entity_set(ranked, cap), (EntitySet{"a", "b"}));
}

TEST(Entities, RankWordsSkipsRedundantAndTies) {
  KnowledgePool pool;
  pool.tweets = {Tweet{"the goal goal", {}, {}, {}, std::string("1")},
                 Tweet{"The ball https://x.y/goal", {}, {}, {}, std::string("2")}};
  std::vector<std::string> red{"the"};
  auto ranked = rank_words(pool, RedundantWordStore(red));
  EXPECT_EQ(ranked, (RankedWords{{"goal", 2}, {"ball", 1}}));
}

TEST(Intersect, WordsAndPhrases) {
  EntitySet e{"harry", "potter", "film", "ronaldo"};
  EXPECT_EQ(intersect_value(e, TagSet{"harry potter", "film", "book", "potter harry"}), 3u);
  EXPECT_EQ(intersect_value(e, TagSet{"harry styles"}), 0u);
  EXPECT_EQ(intersect_value({}, TagSet{"film"}), 0u);
  EXPECT_EQ(intersect_value(e, TagSet{}), 0u);
}

TEST(Threshold, FootballExample) {
  // T_max 14, T_v 10.5: only football clears it.
  auto d = generate_topics(vals({{"football", 14}, {"cricket", 10}, {"movie", 0}}), {});
  EXPECT_EQ(d.t_max, 14u);
  EXPECT_DOUBLE_EQ(d.t_v.to_double(), 10.5);
  EXPECT_EQ(names(d.matched), (std::vector<std::string>{"football"}));
}

TEST(Threshold, ExactBoundaryIsExcluded) {
  // 3*8/4 = 6 exactly; a value of 6 is not strictly above T_v.
  auto d = generate_topics(vals({{"a", 8}, {"b", 6}, {"c", 7}}), {});
  EXPECT_EQ(names(d.matched), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(d.t_v.num, 6);
  EXPECT_EQ(d.t_v.den, 1);
}

TEST(Threshold, MinimumValueGate) {
  EXPECT_TRUE(generate_topics(vals({{"a", 3}, {"b", 3}}), {}).matched.empty());
  EXPECT_EQ(names(generate_topics(vals({{"a", 4}, {"b", 4}}), {}).matched),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(generate_topics({}, {}), Error);
}

TEST(Threshold, OrderingValueThenCatalog) {
  auto d = generate_topics(vals({{"x", 9}, {"y", 10}, {"z", 10}}), {});
  EXPECT_EQ(names(d.matched), (std::vector<std::string>{"y", "z", "x"}));
}

TEST(Threshold, AgreesWithRationalReferenceProperty) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> n(1, 12), v(0, 40);
  for (int i = 0; i < 1000; ++i) {
    std::vector<TopicValue> values;
    std::vector<std::pair<std::string, std::size_t>> ref;
    for (int k = n(rng); k > 0; --k) {
      const std::string name = "t" + std::to_string(k);
      const std::size_t val = static_cast<std::size_t>(v(rng));
      values.push_back(TopicValue{TopicName::parse(name), val});
      ref.emplace_back(name, val);
    }
    EXPECT_EQ(names(generate_topics(values, {}).matched), oracle::naive_threshold(ref, {}));
  }
}

TEST(Classify, EmptyCatalogAndBlankText) {
  CorpusIndex idx;
  CorpusBackend b(idx);
  EXPECT_THROW(classify(Tweet{"hello", {}, {}, {}, {}}, TopicCatalog{}, b, {}), Error);
  TopicCatalog c;
  c.add_topic("x");
  EXPECT_THROW(classify(Tweet{" ", {}, {}, {}, {}}, c, b, {}), Error);
}

TEST(Classify, BackendFailureCarriesPartial) {
  TopicCatalog c;
  c.add_topic("x");
  ThrowingBackend b;
  try {
    classify(Tweet{"some words", {}, {}, {}, {}}, c, b, {});
    FAIL();
  } catch (const ClassificationError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBackend);
    EXPECT_EQ(e.partial().diagnostics.backend_errors.size(), 2u);
    EXPECT_TRUE(e.partial().matched.empty());
  }
}

TEST(Classify, FixtureRowsMatchReference) {
  const auto& f = fixture();
  CorpusBackend backend(f.index);
  const auto docs = oracle::read_corpus(kFixture / "corpus.jsonl");
  std::vector<std::string> red(f.store.words().begin(), f.store.words().end());
  std::vector<std::pair<std::string, std::vector<std::string>>> topics;
  for (const auto& t : f.catalog.topics()) {
    const auto& tags = f.catalog.tags(t);
    topics.emplace_back(t.str(), std::vector<std::string>(tags.begin(), tags.end()));
  }
  const std::vector<std::pair<const char*, std::vector<std::string>>> rows{
      {"I like Ronaldo", {"football"}},
      {"I like Harry Potter", {"movie"}},
      {"How good Shahrukh Khan is!!!!", {"movie"}},
      {"This time I am not going to miss pizza", {"food"}},
      {"I am frustrated", {}},
      {"Sachin is my idol", {"cricket"}},
  };
  for (const auto& [text, expected] : rows) {
    auto r = classify(Tweet{text, {}, {}, {}, {}}, f.catalog, backend, f.store);
    auto ref = oracle::naive_classify(text, docs, red, topics);
    EXPECT_EQ(names(r.matched), expected) << text;
    EXPECT_EQ(names(r.matched), ref.matched) << text;
    EXPECT_EQ(r.entities, ref.entities) << text;
    for (const auto& [topic, value] : ref.values) {
      EXPECT_EQ(r.value_of(TopicName::parse(topic)), value) << text << " " << topic;
    }
  }
}

TEST(Classify, RonaldoValuesFrozen) {
  const auto& f = fixture();
  CorpusBackend backend(f.index);
  auto r = classify(Tweet{"I like Ronaldo", {}, {}, {}, {}}, f.catalog, backend, f.store);
  EXPECT_EQ(r.value_of(tn("football")), 14u);
  EXPECT_EQ(r.t_max, 14u);
  EXPECT_EQ(r.diagnostics.keywords.keywords, (std::set<std::string>{"ronaldo"}));
  auto j = to_json(r);
  EXPECT_EQ(j["matched"], nlohmann::ordered_json::array({"football"}));
  EXPECT_DOUBLE_EQ(j["t_v"].get<double>(), 10.5);
}

TEST(Classify, UserPaths) {
  const auto& f = fixture();
  CorpusBackend backend(f.index);
  EXPECT_EQ(names(classify_user("@CR7_fan", f.catalog, backend, f.store).matched),
            (std::vector<std::string>{"football"}));
  try {
    classify_user("ghost_user", f.catalog, backend, f.store);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoTweet);
  }
  auto url_only = classify_user("linkposter", f.catalog, backend, f.store);
  EXPECT_TRUE(url_only.matched.empty());
  EXPECT_TRUE(url_only.diagnostics.keywords.keywords.empty());
}
