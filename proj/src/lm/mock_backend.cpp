#include "tag/lm/mock_backend.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace tag::lm {

MockBackend::MockBackend(std::vector<MockRule> rules,
                         std::optional<std::string> default_response)
    : rules_(std::move(rules)), default_(std::move(default_response)) {
  std::stable_sort(rules_.begin(), rules_.end(),
                   [](const MockRule& a, const MockRule& b) { return a.priority < b.priority; });
}

void MockBackend::set_capture(bool enabled) {
  std::lock_guard lock(mutex_);
  capture_ = enabled;
  if (!enabled) captured_.clear();
}

std::vector<LMRequest> MockBackend::captured() const {
  std::lock_guard lock(mutex_);
  return captured_;
}

LMResponse MockBackend::do_complete(const LMRequest& request) const {
  calls_.fetch_add(1);
  {
    std::lock_guard lock(mutex_);
    if (capture_) captured_.push_back(request);
  }
  for (const auto& rule : rules_) {
    if (request.user_prompt.find(rule.pattern) != std::string::npos) {
      return LMResponse{rule.response, 0, 0, 0.0};
    }
  }
  if (default_) return LMResponse{*default_, 0, 0, 0.0};
  throw LMError(LMErrorKind::mock_unmatched,
                "no mock rule matches prompt: " +
                    request.user_prompt.substr(0, std::min<std::size_t>(80, request.user_prompt.size())));
}

std::shared_ptr<MockBackend> load_mock_backend(const std::filesystem::path& rules_file) {
  std::ifstream in(rules_file);
  if (!in) throw IoError("cannot read mock rules file: " + rules_file.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed mock rules file: " + std::string(e.what()));
  }
  std::vector<MockRule> rules;
  std::optional<std::string> default_response;
  if (doc.contains("default")) default_response = doc["default"].get<std::string>();
  if (doc.contains("rules")) {
    for (const auto& r : doc["rules"]) {
      MockRule rule;
      rule.pattern = r.at("pattern").get<std::string>();
      rule.response = r.at("response").get<std::string>();
      rule.priority = r.value("priority", 0);
      rules.push_back(std::move(rule));
    }
  }
  return std::make_shared<MockBackend>(std::move(rules), std::move(default_response));
}

}  // namespace tag::lm
