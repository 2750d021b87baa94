#include "tag/pipeline/request.hpp"

namespace tag::pipeline {

std::string_view to_string(QueryType t) {
  switch (t) {
    case QueryType::match:
      return "match";
    case QueryType::comparison:
      return "comparison";
    case QueryType::ranking:
      return "ranking";
    case QueryType::aggregation:
      return "aggregation";
  }
  return "match";
}

std::string_view to_string(Capability c) {
  return c == Capability::knowledge ? "knowledge" : "reasoning";
}

QueryType parse_query_type(std::string_view s) {
  if (s == "match") return QueryType::match;
  if (s == "comparison") return QueryType::comparison;
  if (s == "ranking") return QueryType::ranking;
  if (s == "aggregation") return QueryType::aggregation;
  throw FormatError("unknown query type '" + std::string(s) + "'");
}

Capability parse_capability(std::string_view s) {
  if (s == "knowledge") return Capability::knowledge;
  if (s == "reasoning") return Capability::reasoning;
  throw FormatError("unknown capability '" + std::string(s) + "'");
}

}  // namespace tag::pipeline
