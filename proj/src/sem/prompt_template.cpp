#include "tag/sem/prompt_template.hpp"

#include <algorithm>

namespace tag::sem {

PromptTemplate::PromptTemplate(std::string raw) : raw_(std::move(raw)) {
  std::size_t i = 0;
  while (i < raw_.size()) {
    if (raw_[i] == '{') {
      std::size_t close = raw_.find('}', i + 1);
      if (close == std::string::npos) break;
      std::string name = raw_.substr(i + 1, close - i - 1);
      // A reference body is nonempty and brace-free; anything else is literal text.
      if (name.empty() || name.find('{') != std::string::npos) {
        ++i;
        continue;
      }
      if (std::find(referenced_.begin(), referenced_.end(), name) == referenced_.end()) {
        referenced_.push_back(std::move(name));
      }
      i = close + 1;
    } else {
      ++i;
    }
  }
}

std::string PromptTemplate::instantiate(const Table& t, std::size_t row) const {
  std::string out;
  out.reserve(raw_.size());
  std::size_t i = 0;
  while (i < raw_.size()) {
    if (raw_[i] == '{') {
      std::size_t close = raw_.find('}', i + 1);
      if (close != std::string::npos && close > i + 1) {
        std::string name = raw_.substr(i + 1, close - i - 1);
        if (name.find('{') == std::string::npos) {
          std::size_t col = t.schema().require(name);
          out += t.cell(row, col).render();
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(raw_[i++]);
  }
  return out;
}

}  // namespace tag::sem
