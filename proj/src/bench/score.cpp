#include "tag/bench/score.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace tag::bench {
namespace {

std::string normalize_text(const std::string& s, const ScoringOptions& options) {
  std::string out = s;
  if (options.trim) {
    std::size_t b = out.find_first_not_of(" \t\r\n");
    std::size_t e = out.find_last_not_of(" \t\r\n");
    out = b == std::string::npos ? "" : out.substr(b, e - b + 1);
  }
  if (options.case_insensitive) {
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

bool values_match(const Value& predicted, const Value& gold, const ScoringOptions& options) {
  if (predicted.is_null() || gold.is_null()) {
    return predicted.is_null() && gold.is_null();
  }
  if (predicted.is_numeric() && gold.is_numeric()) {
    return std::fabs(predicted.numeric() - gold.numeric()) <= options.numeric_tolerance;
  }
  if (predicted.type() != gold.type()) return false;
  if (predicted.type() == ValueType::Text) {
    return normalize_text(predicted.as_text(), options) ==
           normalize_text(gold.as_text(), options);
  }
  return predicted == gold;  // Bool
}

bool exact_match(const std::vector<Value>& predicted, const std::vector<Value>& gold,
                 pipeline::QueryType query_type, const ScoringOptions& options) {
  if (predicted.size() != gold.size()) return false;
  if (query_type == pipeline::QueryType::ranking) {
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (!values_match(predicted[i], gold[i], options)) return false;
    }
    return true;
  }
  std::vector<bool> used(gold.size(), false);
  for (const auto& p : predicted) {
    bool matched = false;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (!used[i] && values_match(p, gold[i], options)) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace tag::bench
