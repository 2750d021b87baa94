#pragma once

#include <string>
#include <vector>

#include "tag/lm/backend.hpp"
#include "tag/pipeline/answer.hpp"
#include "tag/pipeline/request.hpp"
#include "tag/retrieval/index.hpp"
#include "tag/sql/ast.hpp"
#include "tag/table.hpp"

namespace tag::pipeline {

// Wall-clock seconds per pipeline stage; stages a method skips stay 0.
struct StageTimes {
  double retrieval_s = 0.0;
  double synthesis_s = 0.0;
  double execution_s = 0.0;
  double generation_s = 0.0;
};

// Asks the model to complete "SELECT ..." against the catalog's DDL and
// parses + validates the result. Parse and validation problems surface as
// SynthesisError; LM transport problems keep their LMError kind.
sql::SqlAst synthesize_sql(const NLRequest& request, const TableCatalog& catalog,
                           const lm::LMBackend& backend, bool rows_variant = false);

// One answer-generation call over the serialized rows. Aggregation requests
// yield free text; everything else parses the response as a value list.
Answer generate_answer(const Table& rows, const NLRequest& request,
                       const lm::LMBackend& backend);

// Canonical flattening of a result table: a single column yields its values,
// a single row yields its cells, anything else flattens row-major.
std::vector<Value> table_to_values(const Table& t);

// One table over the union schema (first-appearance column order) of the
// scored rows, Null-filled where a source table lacks a column. A column
// name reused with a different type is disambiguated as "{table}.{col}".
Table materialize_rows(const std::vector<retrieval::ScoredRow>& rows,
                       const TableCatalog& catalog);

// SQL synthesis, deterministic execution, direct flattening of the result.
Answer run_text2sql(const NLRequest& request, const TableCatalog& catalog,
                    const lm::LMBackend& backend, StageTimes* stages = nullptr);

// Embedding search (k = 10) over all rows, then one generation call.
Answer run_rag(const NLRequest& request, const TableCatalog& catalog,
               const retrieval::VectorIndex& index, const retrieval::Embedder& embedder,
               const lm::LMBackend& backend, StageTimes* stages = nullptr);

// Embedding search (k = 10), LM rerank of the hits, then generation.
Answer run_retrieval_rank(const NLRequest& request, const TableCatalog& catalog,
                          const retrieval::VectorIndex& index,
                          const retrieval::Embedder& embedder, const lm::LMBackend& backend,
                          StageTimes* stages = nullptr);

// Rows-variant SQL synthesis, execution, then a generation call over the
// retrieved rows instead of returning them directly.
Answer run_text2sql_lm(const NLRequest& request, const TableCatalog& catalog,
                       const lm::LMBackend& backend, StageTimes* stages = nullptr);

}  // namespace tag::pipeline
