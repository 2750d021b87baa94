#pragma once

#include <string>

#include "tag/lm/backend.hpp"

namespace tag::lm {

struct HttpLMConfig {
  std::string endpoint;  // full URL, e.g. http://host:8000/v1/chat/completions
  std::string api_key;   // sent as a bearer token when non-empty
  std::string model;
  int retries = 3;               // attempts on transport errors and 5xx
  double backoff_initial_s = 0.5;  // doubles per retry
  double timeout_s = 120.0;
};

// Chat-completions client. POSTs {model, messages, max_tokens, temperature}
// and reads choices[0].message.content. 4xx fails immediately; transport
// errors and 5xx retry with exponential backoff.
class HttpLMBackend : public LMBackend {
 public:
  explicit HttpLMBackend(HttpLMConfig config);

  // TAG_LM_ENDPOINT (required), TAG_LM_API_KEY, TAG_LM_MODEL.
  static HttpLMBackend from_env();

  const HttpLMConfig& config() const { return config_; }

 protected:
  LMResponse do_complete(const LMRequest& request) const override;

 private:
  HttpLMConfig config_;
};

}  // namespace tag::lm
