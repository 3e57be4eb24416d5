#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scidetect/corpus.hpp"

namespace scidetect {

inline constexpr const char* kDefaultApiKeyEnv = "SCIDETECT_API_KEY";

// Configuration for an OpenAI-compatible completions endpoint. The key is
// only ever read from the named environment variable.
struct GenClientConfig {
  std::string endpoint_url;  // e.g. https://api.example.com/v1/completions
  std::string api_key_env_name = kDefaultApiKeyEnv;
  std::string model_name;
  int max_tokens = 512;
  double temperature = 0.7;
  int retry_limit = 3;
  double timeout_seconds = 30.0;

  void validate() const;  // retry_limit <= 10, timeout > 0, URL well-formed
};

// One completion request. Retries transient failures (429, 5xx, timeouts)
// with exponential backoff up to retry_limit; 401/403 fail immediately.
std::string generate_abstract(const GenClientConfig& config, const std::string& prompt);

struct GenerationInput {
  std::string id;
  std::string title;
  Domain domain = Domain::cs;
  Source source = Source::other;
};

// Batch generation with a concurrency cap; outputs are ordered like the
// inputs regardless of completion order.
std::vector<LabeledRecord> generate_corpus(const GenClientConfig& config,
                                           const std::vector<GenerationInput>& inputs,
                                           std::size_t max_in_flight = 4);

}  // namespace scidetect
