#include "eicv/live_adapters.hpp"

#include <ctime>

#include <httplib.h>
#include <json.hpp>

#include "eicv/error.hpp"

namespace eicv {

namespace {

using nlohmann::json;

json get_json(const std::string& base_url, const std::string& path, const httplib::Params& params,
              const httplib::Headers& headers, int timeout_ms) {
  httplib::Client client(base_url);
  const auto secs = timeout_ms / 1000;
  const auto usecs = (timeout_ms % 1000) * 1000;
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_follow_location(true);
  auto res = client.Get(path, params, headers);
  if (!res) {
    throw Error(ErrorKind::kBackend, base_url + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorKind::kBackend, base_url + path + ": HTTP " + std::to_string(res->status));
  }
  json body = json::parse(res->body, nullptr, false);
  if (body.is_discarded()) throw Error(ErrorKind::kBackend, base_url + path + ": invalid JSON");
  return body;
}

class DatamuseProvider final : public RelatedWordsProvider {
 public:
  explicit DatamuseProvider(ProviderSettings settings) : settings_(std::move(settings)) {}

  std::vector<RelatedWord> related(std::string_view term, std::size_t limit) const override {
    const json body = get_json(settings_.url, "/words",
                               {{"ml", std::string(term)}, {"max", std::to_string(limit)}}, {},
                               settings_.timeout_ms);
    if (!body.is_array()) throw Error(ErrorKind::kBackend, "datamuse: expected an array");
    std::vector<RelatedWord> out;
    double best = 0.0;
    for (const json& item : body) {
      if (!item.contains("word") || !item["word"].is_string()) continue;
      const double raw = item.value("score", 0.0);
      best = std::max(best, raw);
      out.push_back(RelatedWord{item["word"].get<std::string>(), raw});
      if (out.size() == limit) break;
    }
    for (RelatedWord& r : out) r.score = best > 0.0 ? r.score / best : 0.0;
    std::stable_sort(out.begin(), out.end(),
                     [](const RelatedWord& a, const RelatedWord& b) { return a.score > b.score; });
    return out;
  }

 private:
  ProviderSettings settings_;
};

// "Wed Oct 10 20:19:24 +0000 2018"
std::int64_t parse_created_at(const std::string& s) {
  std::tm tm{};
  if (::strptime(s.c_str(), "%a %b %d %H:%M:%S +0000 %Y", &tm) == nullptr) return 0;
  return static_cast<std::int64_t>(::timegm(&tm));
}

Tweet tweet_from_status(const json& status) {
  Tweet t;
  t.id = status.value("id_str", std::string{});
  t.text = status.contains("full_text") ? status.value("full_text", std::string{})
                                        : status.value("text", std::string{});
  if (status.contains("user") && status["user"].is_object()) {
    t.author = status["user"].value("screen_name", std::string{});
  }
  t.timestamp = parse_created_at(status.value("created_at", std::string{}));
  t.popularity = status.value("favorite_count", std::uint64_t{0}) +
                 status.value("retweet_count", std::uint64_t{0});
  return t;
}

class TwitterBackend final : public SearchBackend {
 public:
  explicit TwitterBackend(TwitterSettings settings) : settings_(std::move(settings)) {
    if (settings_.bearer_token.empty()) {
      throw Error(ErrorKind::kValidation, "twitter backend needs a bearer token");
    }
  }

  std::vector<Tweet> search_popular(std::string_view keyword, std::size_t cap) const override {
    return search(keyword, cap, "popular");
  }
  std::vector<Tweet> search_recent(std::string_view keyword, std::size_t cap) const override {
    return search(keyword, cap, "recent");
  }

  std::optional<Tweet> last_tweet(std::string_view username) const override {
    const json body = get_json(settings_.base_url, "/1.1/statuses/user_timeline.json",
                               {{"screen_name", canonical_username(username)},
                                {"count", "1"},
                                {"tweet_mode", "extended"}},
                               headers(), settings_.timeout_ms);
    if (!body.is_array() || body.empty()) return std::nullopt;
    return tweet_from_status(body.front());
  }

 private:
  std::vector<Tweet> search(std::string_view keyword, std::size_t cap, const char* type) const {
    if (cap == 0) return {};
    const json body = get_json(settings_.base_url, "/1.1/search/tweets.json",
                               {{"q", std::string(keyword)},
                                {"result_type", type},
                                {"count", std::to_string(cap)},
                                {"lang", "en"},
                                {"tweet_mode", "extended"}},
                               headers(), settings_.timeout_ms);
    std::vector<Tweet> out;
    if (!body.contains("statuses") || !body["statuses"].is_array()) return out;
    for (const json& status : body["statuses"]) {
      if (out.size() == cap) break;
      out.push_back(tweet_from_status(status));
    }
    return out;
  }

  httplib::Headers headers() const {
    return {{"Authorization", "Bearer " + settings_.bearer_token}};
  }

  TwitterSettings settings_;
};

}  // namespace

std::unique_ptr<RelatedWordsProvider> make_datamuse_provider(const ProviderSettings& settings) {
  return std::make_unique<DatamuseProvider>(settings);
}

std::unique_ptr<SearchBackend> make_twitter_backend(const TwitterSettings& settings) {
  return std::make_unique<TwitterBackend>(settings);
}

}  // namespace eicv
