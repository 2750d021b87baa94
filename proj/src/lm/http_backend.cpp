#include "tag/lm/http_backend.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "tag/http_common.hpp"

namespace tag::lm {

HttpLMBackend::HttpLMBackend(HttpLMConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) {
    throw FormatError("LM endpoint is empty; set TAG_LM_ENDPOINT or pass a config");
  }
}

HttpLMBackend HttpLMBackend::from_env() {
  HttpLMConfig config;
  config.endpoint = env_or_empty("TAG_LM_ENDPOINT");
  config.api_key = env_or_empty("TAG_LM_API_KEY");
  config.model = env_or_empty("TAG_LM_MODEL");
  return HttpLMBackend(std::move(config));
}

LMResponse HttpLMBackend::do_complete(const LMRequest& request) const {
  SplitUrl url = split_url(config_.endpoint, "/v1/chat/completions");

  nlohmann::json messages = nlohmann::json::array();
  if (request.system_prompt) {
    messages.push_back({{"role", "system"}, {"content", *request.system_prompt}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user_prompt}});
  nlohmann::json body = {
      {"model", config_.model},
      {"messages", std::move(messages)},
      {"max_tokens", request.max_tokens},
      {"temperature", request.temperature},
  };
  std::string payload = body.dump();

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  std::string last_error;
  int attempts = std::max(1, config_.retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      double delay = config_.backoff_initial_s * static_cast<double>(1 << (attempt - 1));
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    httplib::Client client(url.base);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));
    client.set_write_timeout(std::chrono::duration<double>(config_.timeout_s));
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server error: HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw LMError(LMErrorKind::backend,
                    "HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    try {
      nlohmann::json doc = nlohmann::json::parse(res->body);
      return LMResponse{doc.at("choices").at(0).at("message").at("content").get<std::string>(),
                        0, 0, 0.0};
    } catch (const nlohmann::json::exception& e) {
      throw LMError(LMErrorKind::backend,
                    "malformed completion response: " + std::string(e.what()));
    }
  }
  throw LMError(LMErrorKind::backend,
                "request failed after " + std::to_string(attempts) + " attempts; last: " +
                    last_error);
}

}  // namespace tag::lm
