#pragma once

#include <vector>

#include "tag/pipeline/request.hpp"
#include "tag/value.hpp"

namespace tag::bench {

struct ScoringOptions {
  bool case_insensitive = true;
  bool trim = true;
  double numeric_tolerance = 1e-6;
};

// Kind-respecting value equality: text compares trimmed and ASCII-lowercased
// (per the options), numerics within the tolerance, Bool and Null exactly.
// There is no cross-kind coercion ("5" never matches 5).
bool values_match(const Value& predicted, const Value& gold, const ScoringOptions& options);

// Exact match for one scoreable answer. Ranking demands ordered equality;
// match and comparison compare as multisets (greedy one-to-one matching).
bool exact_match(const std::vector<Value>& predicted, const std::vector<Value>& gold,
                 pipeline::QueryType query_type, const ScoringOptions& options = {});

}  // namespace tag::bench
