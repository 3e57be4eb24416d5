#include "scidetect/genclient.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "scidetect/error.hpp"

namespace scidetect {

using json = nlohmann::json;

namespace {

struct ParsedUrl {
  std::string scheme_host;  // scheme://host[:port], what httplib::Client takes
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    fail(errc::bad_format, "endpoint URL must include a scheme: " + url);
  const std::size_t path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  if (path_start == std::string::npos) {
    out.scheme_host = url;
    out.path = "/";
  } else {
    out.scheme_host = url.substr(0, path_start);
    out.path = url.substr(path_start);
  }
  return out;
}

std::string resolve_api_key(const GenClientConfig& config) {
  const char* key = std::getenv(config.api_key_env_name.c_str());
  if (!key || !*key)
    fail(errc::auth_failure,
         "AuthFailure: API key environment variable not set: " + config.api_key_env_name);
  return key;
}

}  // namespace

void GenClientConfig::validate() const {
  if (endpoint_url.empty()) fail(errc::bad_format, "endpoint URL is empty");
  parse_url(endpoint_url);
  if (model_name.empty()) fail(errc::bad_format, "model name is empty");
  if (max_tokens <= 0) fail(errc::bad_format, "max_tokens must be positive");
  if (temperature < 0.0) fail(errc::bad_format, "temperature must be non-negative");
  if (retry_limit < 0 || retry_limit > 10)
    fail(errc::bad_format, "retry_limit must be in [0, 10]");
  if (!(timeout_seconds > 0.0)) fail(errc::bad_format, "timeout must be positive");
}

std::string generate_abstract(const GenClientConfig& config, const std::string& prompt) {
  config.validate();
  if (prompt.empty()) fail(errc::empty_text, "EmptyText: prompt is empty");
  const std::string api_key = resolve_api_key(config);
  const ParsedUrl url = parse_url(config.endpoint_url);

  json body;
  body["model"] = config.model_name;
  body["prompt"] = prompt;
  body["max_tokens"] = config.max_tokens;
  body["temperature"] = config.temperature;
  const std::string payload = body.dump();

  const auto timeout_ms =
      std::chrono::milliseconds(static_cast<long long>(config.timeout_seconds * 1000.0));

  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= config.retry_limit; ++attempt) {
    if (attempt > 0) {
      // Exponential backoff: 250ms, 500ms, 1s, ... capped at 8s.
      const auto backoff = std::chrono::milliseconds(
          std::min<long long>(250LL << (attempt - 1), 8000LL));
      std::this_thread::sleep_for(backoff);
    }

    httplib::Client client(url.scheme_host);
    client.set_connection_timeout(timeout_ms);
    client.set_read_timeout(timeout_ms);
    client.set_write_timeout(timeout_ms);
    client.set_bearer_token_auth(api_key);

    httplib::Result res = client.Post(url.path, payload, "application/json");
    if (!res) {
      last_error = "Timeout: " + httplib::to_string(res.error());
      continue;  // connection/timeout errors are transient
    }
    if (res->status == 401 || res->status == 403)
      fail(errc::auth_failure, "AuthFailure: HTTP " + std::to_string(res->status));
    if (res->status == 429) {
      last_error = "RateLimited: HTTP 429";
      continue;
    }
    if (res->status >= 500) {
      last_error = "HttpError: HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      fail(errc::http_error, "HttpError: HTTP " + std::to_string(res->status));

    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::exception& e) {
      fail(errc::bad_format, std::string("malformed completion response: ") + e.what());
    }
    std::string text;
    if (reply.contains("choices") && !reply["choices"].empty()) {
      const auto& choice = reply["choices"][0];
      if (choice.contains("text")) text = choice["text"].get<std::string>();
      else if (choice.contains("message") && choice["message"].contains("content"))
        text = choice["message"]["content"].get<std::string>();
    }
    // Trim surrounding whitespace the API likes to prepend.
    const std::size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
      fail(errc::empty_completion, "EmptyCompletion: endpoint returned no text");
    const std::size_t e = text.find_last_not_of(" \t\r\n");
    return text.substr(b, e - b + 1);
  }

  if (last_error.rfind("RateLimited", 0) == 0) fail(errc::rate_limited, last_error);
  if (last_error.rfind("Timeout", 0) == 0) fail(errc::timeout, last_error);
  fail(errc::http_error, last_error);
}

std::vector<LabeledRecord> generate_corpus(const GenClientConfig& config,
                                           const std::vector<GenerationInput>& inputs,
                                           std::size_t max_in_flight) {
  config.validate();
  if (max_in_flight == 0) max_in_flight = 1;

  std::vector<LabeledRecord> records(inputs.size());
  std::vector<std::string> errors(inputs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= inputs.size()) return;
      const GenerationInput& in = inputs[i];
      try {
        const std::string prompt = build_prompt(in.title, in.domain);
        LabeledRecord rec;
        rec.id = in.id;
        rec.source = in.source;
        rec.domain = in.domain;
        rec.title = in.title;
        rec.abstract_text = generate_abstract(config, prompt);
        rec.label = 0;
        rec.generator = config.model_name;
        records[i] = std::move(rec);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  const std::size_t threads = std::min(max_in_flight, inputs.size());
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (!errors[i].empty())
      fail(errc::http_error, "generation failed for id " + inputs[i].id + ": " + errors[i]);
  return records;
}

}  // namespace scidetect
