#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "tag/bench/case.hpp"
#include "tag/bench/score.hpp"
#include "tag/lm/backend.hpp"
#include "tag/pipeline/methods.hpp"
#include "tag/retrieval/embedder.hpp"

namespace tag::bench {

enum class Method { text2sql, rag, retrieval_rank, text2sql_lm, handwritten };

inline constexpr Method kAllMethods[] = {Method::text2sql, Method::rag,
                                         Method::retrieval_rank, Method::text2sql_lm,
                                         Method::handwritten};

std::string_view display_name(Method m);  // report labels, e.g. "Hand-written TAG"
std::string_view method_key(Method m);    // CLI/CSV keys, e.g. "handwritten"
Method parse_method(std::string_view key);  // throws FormatError

// How a failed (case, method) run failed. synthesis covers invalid SQL and
// broken plans; parse covers malformed answer lists; backend covers LM
// transport problems; context_overflow is the prompt budget.
enum class FailureKind { synthesis, context_overflow, parse, backend };

std::string_view to_string(FailureKind k);
FailureKind parse_failure_kind(std::string_view s);  // throws FormatError

struct EvalResult {
  std::string case_id;
  Method method = Method::text2sql;
  pipeline::QueryType query_type = pipeline::QueryType::match;
  pipeline::Capability capability = pipeline::Capability::knowledge;
  std::optional<bool> correct;  // absent exactly for aggregation cases
  double execution_time_s = 0.0;
  std::optional<FailureKind> failure_kind;
  pipeline::Answer answer;
  pipeline::StageTimes stages;
};

struct HarnessConfig {
  std::filesystem::path data_dir;
  std::filesystem::path plans_dir;
  std::vector<Method> methods{kAllMethods, kAllMethods + 5};
  std::size_t workers = 4;
  ScoringOptions scoring;
};

// Runs every requested method over every case. Catalogs are cached per
// (domain, type hints); the row index is only built when a retrieval method
// asks for it. Per-run exceptions become failure records; only unusable
// configuration (missing data, malformed plan files) throws. Results come
// back sorted by (case_id, method).
std::vector<EvalResult> run_benchmark(const std::vector<BenchmarkCase>& cases,
                                      const HarnessConfig& config,
                                      const lm::LMBackend& backend,
                                      const retrieval::Embedder& embedder);

}  // namespace tag::bench
