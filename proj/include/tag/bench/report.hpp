#pragma once

#include <string>
#include <vector>

#include "tag/bench/harness.hpp"

namespace tag::bench {

// Markdown report with two tables: per-query-type (Overall first, then
// Match/Comparison/Ranking/Aggregation) and per-capability
// (Knowledge/Reasoning). Exact-match cells average only scoreable results
// (aggregation shows "N/A"); execution-time cells average every result.
// Overall columns average the per-type averages. Cells print with two
// decimals.
std::string render_report(const std::vector<EvalResult>& results);

// One row per result: case_id,method,query_type,capability,correct,
// failure_kind,execution_time_s,answer_kind,answer. Empty cells stand for
// absent optionals; times use shortest round-trip form, so reparsing
// reproduces the results exactly.
std::string results_to_csv(const std::vector<EvalResult>& results);

// Inverse of results_to_csv (stage times are not serialized and come back
// zero). Throws FormatError on malformed input.
std::vector<EvalResult> parse_results_csv(const std::string& csv_text);

}  // namespace tag::bench
