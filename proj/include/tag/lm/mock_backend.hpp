#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tag/lm/backend.hpp"

namespace tag::lm {

// Substring-triggered canned response. Lower priority wins; ties keep
// configuration order.
struct MockRule {
  std::string pattern;
  std::string response;
  int priority = 0;
};

// Referentially transparent scripted backend: same prompt, same response.
class MockBackend : public LMBackend {
 public:
  explicit MockBackend(std::vector<MockRule> rules,
                       std::optional<std::string> default_response = std::nullopt);

  std::size_t call_count() const { return calls_.load(); }
  void reset_call_count() { calls_.store(0); }

  void set_capture(bool enabled);
  std::vector<LMRequest> captured() const;

 protected:
  LMResponse do_complete(const LMRequest& request) const override;

 private:
  std::vector<MockRule> rules_;  // stable-sorted by priority
  std::optional<std::string> default_;
  mutable std::atomic<std::size_t> calls_{0};
  mutable std::mutex mutex_;
  mutable std::vector<LMRequest> captured_;
  bool capture_ = false;
};

// JSON rules file: {"default": "...", "rules": [{"pattern", "response",
// "priority"}]}. Both keys optional.
std::shared_ptr<MockBackend> load_mock_backend(const std::filesystem::path& rules_file);

}  // namespace tag::lm
