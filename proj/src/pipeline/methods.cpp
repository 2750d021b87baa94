#include "tag/pipeline/methods.hpp"

#include <chrono>
#include <map>

#include "tag/pipeline/prompts.hpp"
#include "tag/serialize.hpp"
#include "tag/sql/executor.hpp"
#include "tag/sql/parser.hpp"

namespace tag::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

sql::SqlAst synthesize_sql(const NLRequest& request, const TableCatalog& catalog,
                           const lm::LMBackend& backend, bool rows_variant) {
  lm::LMRequest req;
  req.user_prompt = build_synthesis_prompt(catalog, request.text, rows_variant);
  lm::LMResponse response = backend.complete(req);
  std::string sql = "SELECT " + trim(response.text);
  try {
    sql::SqlAst ast = sql::parse_sql(sql);
    sql::validate(ast, catalog);
    return ast;
  } catch (const lm::LMError&) {
    throw;
  } catch (const Error& e) {
    throw SynthesisError("synthesized query rejected: " + std::string(e.what()));
  }
}

Answer generate_answer(const Table& rows, const NLRequest& request,
                       const lm::LMBackend& backend) {
  lm::LMRequest req;
  req.user_prompt = build_answer_prompt(rows, request.text, request.query_type);
  lm::LMResponse response = backend.complete(req);
  if (request.query_type == QueryType::aggregation) {
    return Answer::freeform(trim(response.text));
  }
  return Answer::list(parse_answer_list(response.text));
}

std::vector<Value> table_to_values(const Table& t) {
  std::vector<Value> out;
  if (t.column_count() == 1) {
    for (const auto& row : t.rows()) out.push_back(row[0]);
    return out;
  }
  for (const auto& row : t.rows()) {
    for (const auto& cell : row) out.push_back(cell);
  }
  return out;
}

Table materialize_rows(const std::vector<retrieval::ScoredRow>& rows,
                       const TableCatalog& catalog) {
  std::vector<Column> columns;
  std::map<std::string, std::size_t> by_name;
  std::map<std::string, std::vector<std::size_t>> source_map;  // table -> out index per col

  auto out_index = [&](const std::string& name, ValueType type) {
    auto it = by_name.find(name);
    if (it != by_name.end()) return it->second;
    columns.push_back({name, type});
    by_name.emplace(name, columns.size() - 1);
    return columns.size() - 1;
  };

  for (const auto& scored : rows) {
    if (source_map.count(scored.table_name)) continue;
    const Table& t = catalog.at(scored.table_name);
    std::vector<std::size_t> mapping;
    for (const auto& col : t.schema().columns()) {
      auto it = by_name.find(col.name);
      if (it != by_name.end() && columns[it->second].type != col.type) {
        mapping.push_back(out_index(scored.table_name + "." + col.name, col.type));
      } else {
        mapping.push_back(out_index(col.name, col.type));
      }
    }
    source_map.emplace(scored.table_name, std::move(mapping));
  }

  Table out("retrieved", Schema(columns));
  for (const auto& scored : rows) {
    const Table& t = catalog.at(scored.table_name);
    const auto& mapping = source_map.at(scored.table_name);
    Row row(columns.size());
    for (std::size_t c = 0; c < mapping.size(); ++c) {
      row[mapping[c]] = t.cell(scored.row_index, c);
    }
    out.append_row(std::move(row));
  }
  return out;
}

Answer run_text2sql(const NLRequest& request, const TableCatalog& catalog,
                    const lm::LMBackend& backend, StageTimes* stages) {
  auto t0 = Clock::now();
  sql::SqlAst ast = synthesize_sql(request, catalog, backend);
  if (stages) stages->synthesis_s = seconds_since(t0);
  auto t1 = Clock::now();
  Table result = sql::execute_sql(ast, catalog);
  if (stages) stages->execution_s = seconds_since(t1);
  return Answer::list(table_to_values(result));
}

Answer run_rag(const NLRequest& request, const TableCatalog& catalog,
               const retrieval::VectorIndex& index, const retrieval::Embedder& embedder,
               const lm::LMBackend& backend, StageTimes* stages) {
  auto t0 = Clock::now();
  auto hits = retrieval::search(index, request.text, 10, embedder);
  Table rows = materialize_rows(hits, catalog);
  if (stages) stages->retrieval_s = seconds_since(t0);
  auto t1 = Clock::now();
  Answer answer = generate_answer(rows, request, backend);
  if (stages) stages->generation_s = seconds_since(t1);
  return answer;
}

Answer run_retrieval_rank(const NLRequest& request, const TableCatalog& catalog,
                          const retrieval::VectorIndex& index,
                          const retrieval::Embedder& embedder, const lm::LMBackend& backend,
                          StageTimes* stages) {
  auto t0 = Clock::now();
  auto hits = retrieval::search(index, request.text, 10, embedder);
  auto ranked = retrieval::lm_rerank(hits, catalog, request.text, backend);
  Table rows = materialize_rows(ranked, catalog);
  if (stages) stages->retrieval_s = seconds_since(t0);
  auto t1 = Clock::now();
  Answer answer = generate_answer(rows, request, backend);
  if (stages) stages->generation_s = seconds_since(t1);
  return answer;
}

Answer run_text2sql_lm(const NLRequest& request, const TableCatalog& catalog,
                       const lm::LMBackend& backend, StageTimes* stages) {
  auto t0 = Clock::now();
  sql::SqlAst ast = synthesize_sql(request, catalog, backend, /*rows_variant=*/true);
  if (stages) stages->synthesis_s = seconds_since(t0);
  auto t1 = Clock::now();
  Table result = sql::execute_sql(ast, catalog);
  if (stages) stages->execution_s = seconds_since(t1);
  auto t2 = Clock::now();
  Answer answer = generate_answer(result, request, backend);
  if (stages) stages->generation_s = seconds_since(t2);
  return answer;
}

}  // namespace tag::pipeline
