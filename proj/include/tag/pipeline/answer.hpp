#pragma once

#include <string>
#include <vector>

#include "tag/value.hpp"

namespace tag::pipeline {

enum class AnswerKind { value_list, free_text };

// Final result of a pipeline run: either an ordered list of values or prose.
struct Answer {
  AnswerKind kind = AnswerKind::free_text;
  std::vector<Value> values;  // value_list only
  std::string text;           // free_text only

  static Answer list(std::vector<Value> values);
  static Answer freeform(std::string text);

  // Lists render in bracket form with double-quoted strings and a ".0"
  // suffix on integral floats; free text renders as-is.
  std::string render() const;

  bool operator==(const Answer&) const = default;
};

// Parses the first balanced [...] span of a model response into values.
// Items: double-quoted strings (\" \\ \n \t \r escapes), integers, decimals,
// and the atoms true/false/null (case-insensitive). Throws AnswerParseError
// when no well-formed list is present.
std::vector<Value> parse_answer_list(const std::string& text);

}  // namespace tag::pipeline
