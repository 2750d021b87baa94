#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tag/csv.hpp"
#include "tag/pipeline/request.hpp"
#include "tag/value.hpp"

namespace tag::bench {

// One benchmark question. gold is present exactly when the query type is
// scoreable (everything but aggregation); plan_ref names the hand-written
// plan file, when one exists.
struct BenchmarkCase {
  std::string id;
  std::string domain;
  pipeline::QueryType query_type = pipeline::QueryType::match;
  pipeline::Capability capability = pipeline::Capability::knowledge;
  std::string request_text;
  std::optional<std::vector<Value>> gold;
  std::optional<std::string> plan_ref;
  CatalogHints type_hints;

  pipeline::NLRequest request() const {
    return {request_text, query_type, capability};
  }
};

// Parses a top-level JSON array of cases. Enforces unique ids and the
// gold-iff-scoreable rule; violations are FormatErrors naming the case.
std::vector<BenchmarkCase> parse_cases(const std::string& json_text);

// parse_cases over a file. Throws IoError when unreadable.
std::vector<BenchmarkCase> load_cases(const std::filesystem::path& path);

}  // namespace tag::bench
