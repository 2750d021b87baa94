#pragma once

#include <string>
#include <string_view>

#include "tag/errors.hpp"

namespace tag::pipeline {

// Benchmark taxonomy: what shape of answer the question calls for.
enum class QueryType { match, comparison, ranking, aggregation };

// Whether answering needs world knowledge or reasoning over row text.
enum class Capability { knowledge, reasoning };

std::string_view to_string(QueryType t);
std::string_view to_string(Capability c);
QueryType parse_query_type(std::string_view s);    // throws FormatError
Capability parse_capability(std::string_view s);   // throws FormatError

// A natural-language request against one domain's tables.
struct NLRequest {
  std::string text;
  QueryType query_type = QueryType::match;
  Capability capability = Capability::knowledge;
};

}  // namespace tag::pipeline
