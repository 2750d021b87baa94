#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tag/errors.hpp"

namespace tag::lm {

struct LMRequest {
  std::optional<std::string> system_prompt;
  std::string user_prompt;
  int max_tokens = 512;
  double temperature = 0.0;
};

struct LMResponse {
  std::string text;
  std::size_t prompt_chars = 0;
  std::size_t completion_chars = 0;
  double latency_s = 0.0;
};

enum class LMErrorKind { backend, context_overflow, mock_unmatched };

std::string_view to_string(LMErrorKind kind);

class LMError : public Error {
 public:
  LMError(LMErrorKind kind, std::string message)
      : Error(std::move(message)), kind_(kind) {}

  LMErrorKind kind() const { return kind_; }

 private:
  LMErrorKind kind_;
};

// Per-slot result of a batched call: exactly one of response/error is set.
struct LMOutcome {
  std::optional<LMResponse> response;
  std::optional<LMErrorKind> error_kind;
  std::string error_message;

  bool ok() const { return response.has_value(); }
};

// Estimated prompt size: ceil(total characters / 4).
std::size_t estimate_tokens(const LMRequest& request);

// Deterministic-friendly completion interface. Implementations must be safe
// to call from multiple threads at once.
class LMBackend {
 public:
  virtual ~LMBackend() = default;

  // Throws LMError; context budget is enforced here for every backend.
  LMResponse complete(const LMRequest& request) const;

  // Positionally aligned fan-out with at most max_in_flight() concurrent
  // calls; a failed slot carries its own error and never fails the batch.
  std::vector<LMOutcome> complete_batch(const std::vector<LMRequest>& requests) const;

  std::size_t context_budget_tokens() const { return context_budget_tokens_; }
  void set_context_budget_tokens(std::size_t tokens) { context_budget_tokens_ = tokens; }
  std::size_t max_in_flight() const { return max_in_flight_; }
  void set_max_in_flight(std::size_t n) { max_in_flight_ = n ? n : 1; }

 protected:
  virtual LMResponse do_complete(const LMRequest& request) const = 0;

 private:
  std::size_t context_budget_tokens_ = 8192;
  std::size_t max_in_flight_ = 8;
};

}  // namespace tag::lm
