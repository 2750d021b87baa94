#include "tag/lm/backend.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace tag::lm {

std::string_view to_string(LMErrorKind kind) {
  switch (kind) {
    case LMErrorKind::backend: return "backend";
    case LMErrorKind::context_overflow: return "context_overflow";
    case LMErrorKind::mock_unmatched: return "mock_unmatched";
  }
  return "?";
}

std::size_t estimate_tokens(const LMRequest& request) {
  std::size_t chars = request.user_prompt.size();
  if (request.system_prompt) chars += request.system_prompt->size();
  return (chars + 3) / 4;
}

LMResponse LMBackend::complete(const LMRequest& request) const {
  std::size_t estimated = estimate_tokens(request);
  if (estimated > context_budget_tokens_) {
    throw LMError(LMErrorKind::context_overflow,
                  "prompt of ~" + std::to_string(estimated) + " tokens exceeds budget of " +
                      std::to_string(context_budget_tokens_));
  }
  auto start = std::chrono::steady_clock::now();
  LMResponse response = do_complete(request);
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  response.latency_s = elapsed.count();
  std::size_t chars = request.user_prompt.size();
  if (request.system_prompt) chars += request.system_prompt->size();
  response.prompt_chars = chars;
  response.completion_chars = response.text.size();
  return response;
}

std::vector<LMOutcome> LMBackend::complete_batch(
    const std::vector<LMRequest>& requests) const {
  std::vector<LMOutcome> out(requests.size());
  if (requests.empty()) return out;
  std::atomic<std::size_t> next{0};
  std::size_t workers = std::min(max_in_flight_, requests.size());
  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) return;
      try {
        out[i].response = complete(requests[i]);
      } catch (const LMError& e) {
        out[i].error_kind = e.kind();
        out[i].error_message = e.what();
      } catch (const std::exception& e) {
        out[i].error_kind = LMErrorKind::backend;
        out[i].error_message = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace tag::lm
