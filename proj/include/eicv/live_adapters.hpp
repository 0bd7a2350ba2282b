#pragma once

// HTTP-backed implementations of the provider and backend interfaces. They
// need network access and credentials, so nothing in the test suite uses
// them. Available when built with EICV_WITH_LIVE_ADAPTERS.

#include <memory>
#include <string>

#include "eicv/config.hpp"
#include "eicv/knowledge_source.hpp"
#include "eicv/tag_expander.hpp"

namespace eicv {

// Datamuse "means like" query (`/words?ml=<term>&max=<limit>`). Raw scores
// are divided by the best score so they land in [0, 1].
std::unique_ptr<RelatedWordsProvider> make_datamuse_provider(const ProviderSettings& settings);

struct TwitterSettings {
  std::string base_url = "https://api.twitter.com";
  std::string bearer_token;  // usually from KNOWLEDGE_API_TOKEN
  int timeout_ms = 5000;
};

// Twitter v1.1 standard search and user timeline. Popularity is
// favorite_count + retweet_count.
std::unique_ptr<SearchBackend> make_twitter_backend(const TwitterSettings& settings);

}  // namespace eicv
