#include <gtest/gtest.h>

#include <random>

#include "eicv/error.hpp"
#include "eicv/knowledge_source.hpp"
#include "support/oracle.hpp"
#include "support/temp_dir.hpp"

using namespace eicv;
using eicv::test::TempDir;
using eicv::test::write_text;

namespace {

Tweet tw(std::string id, std::string text, std::int64_t ts, std::uint64_t pop,
         std::optional<std::string> user = {}) {
  return Tweet{std::move(text), std::move(user), ts, pop, std::move(id)};
}

std::vector<std::string> ids(const std::vector<Tweet>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(*t.id);
  return out;
}

std::vector<std::string> ids(const std::vector<oracle::Doc>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.id);
  return out;
}

class FailingBackend final : public SearchBackend {
 public:
  std::vector<Tweet> search_popular(std::string_view kw, std::size_t) const override {
    if (kw == "bad") throw Error(ErrorKind::kBackend, "rate limited");
    return {tw("p-" + std::string(kw), std::string(kw), 1, 1)};
  }
  std::vector<Tweet> search_recent(std::string_view kw, std::size_t) const override {
    return {tw("p-" + std::string(kw), std::string(kw), 1, 1), tw("shared", "x", 2, 0)};
  }
  std::optional<Tweet> last_tweet(std::string_view) const override { return std::nullopt; }
};

}  // namespace

TEST(CorpusIndex, PopularAndRecentOrder) {
  auto idx = CorpusIndex::build({
      tw("a", "goal", 10, 5),
      tw("b", "Goal!", 30, 5),
      tw("c", "goal", 20, 9),
      tw("d", "goal", 30, 1),
      tw("e", "no match", 99, 99),
  });
  EXPECT_EQ(ids(idx.search_popular("goal", 20)), (std::vector<std::string>{"c", "b", "a", "d"}));
  EXPECT_EQ(ids(idx.search_recent("goal", 100)), (std::vector<std::string>{"d", "b", "c", "a"}));
  EXPECT_EQ(ids(idx.search_popular("GOAL", 2)), (std::vector<std::string>{"c", "b"}));
  EXPECT_TRUE(idx.search_popular("goal", 0).empty());
  EXPECT_TRUE(idx.search_recent("missing", 10).empty());
}

TEST(CorpusIndex, DuplicateIdKeepsLast) {
  auto idx = CorpusIndex::build({tw("a", "old text", 1, 1), tw("a", "new text", 2, 2)});
  EXPECT_EQ(idx.size(), 1u);
  EXPECT_EQ(idx.find("a")->text, "new text");
  EXPECT_TRUE(idx.search_popular("old", 5).empty());
}

TEST(CorpusIndex, LastTweetByUser) {
  auto idx = CorpusIndex::build({tw("1", "first", 10, 0, "Fan"), tw("2", "second", 20, 0, "fan"),
                                 tw("3", "other", 30, 0, "someone")});
  EXPECT_EQ(idx.last_tweet("@FAN")->text, "second");
  EXPECT_FALSE(idx.last_tweet("nobody").has_value());
  CorpusBackend backend(idx);
  EXPECT_THROW(eicv::last_tweet(backend, " @ "), Error);
}

TEST(CorpusIndex, CacheRoundTripAndCorruption) {
  TempDir d;
  auto idx = CorpusIndex::build({tw("1", "alpha beta", 10, 3, "u"), tw("2", "beta", 20, 1)});
  idx.save(d / "x.idx");
  EXPECT_EQ(CorpusIndex::load(d / "x.idx"), idx);

  auto expect_io = [&](const std::filesystem::path& p) {
    try {
      CorpusIndex::load(p);
      FAIL() << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kIo);
    }
  };
  expect_io(d / "missing.idx");
  write_text(d / "foreign.idx", "definitely not an index");
  expect_io(d / "foreign.idx");
  const std::string full = eicv::test::read_text(d / "x.idx");
  write_text(d / "trunc.idx", full.substr(0, full.size() / 2));
  expect_io(d / "trunc.idx");
}

TEST(IndexCorpus, CountsMalformedAndDuplicates) {
  TempDir d;
  write_text(d / "c.jsonl",
             "{\"id\":\"1\",\"text\":\"hello world\",\"ts\":5,\"pop\":2}\n"
             "\n"
             "not json\n"
             "{\"id\":2,\"text\":\"numeric id\"}\n"
             "{\"id\":\"3\"}\n"
             "{\"id\":\"4\",\"text\":\"neg\",\"pop\":-1}\n"
             "{\"id\":\"1\",\"text\":\"replaced\"}\r\n");
  auto r = index_corpus(d / "c.jsonl");
  EXPECT_EQ(r.malformed_lines, 3u);
  EXPECT_EQ(r.duplicate_ids, 1u);
  EXPECT_EQ(r.index.size(), 2u);
  EXPECT_EQ(r.index.find("1")->text, "replaced");
  EXPECT_NE(r.index.find("2"), nullptr);
  EXPECT_THROW(index_corpus(d / "none.jsonl"), Error);
}

TEST(Gather, UnionsAndRecordsErrors) {
  FailingBackend b;
  auto pool = gather(b, {"alpha", "bad", "beta"});
  EXPECT_EQ(pool.errors.size(), 1u);
  EXPECT_TRUE(pool.errors.contains("bad"));
  EXPECT_EQ(ids(pool.tweets), (std::vector<std::string>{"p-alpha", "p-beta", "shared"}));
  EXPECT_EQ(pool.per_keyword.at("alpha"), (KeywordHits{1, 2}));
}

TEST(CorpusIndex, AgreesWithLinearScanOnFixture) {
  const std::filesystem::path corpus = std::filesystem::path(EICV_FIXTURE_DIR) / "corpus.jsonl";
  auto idx = index_corpus(corpus).index;
  auto docs = oracle::read_corpus(corpus);
  for (const char* kw : {"ronaldo", "the", "pizza", "khan", "harry", "sachin", "zzz"}) {
    for (std::size_t cap : {0u, 1u, 5u, 20u, 100u}) {
      EXPECT_EQ(ids(idx.search_popular(kw, cap)), ids(oracle::naive_popular(docs, kw, cap))) << kw;
      EXPECT_EQ(ids(idx.search_recent(kw, cap)), ids(oracle::naive_recent(docs, kw, cap))) << kw;
    }
  }
}
