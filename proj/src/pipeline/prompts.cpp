#include "tag/pipeline/prompts.hpp"

#include "tag/serialize.hpp"

namespace tag::pipeline {

std::string_view ddl_type_name(ValueType t) {
  switch (t) {
    case ValueType::Int:
      return "INTEGER";
    case ValueType::Float:
      return "REAL";
    case ValueType::Bool:
      return "BOOLEAN";
    case ValueType::Text:
      return "TEXT";
    default:
      return "TEXT";
  }
}

std::string render_create_table(const Table& t) {
  std::string out = "CREATE TABLE " + t.name() + "\n(\n";
  const auto& cols = t.schema().columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out += "    " + cols[i].name + " " + std::string(ddl_type_name(cols[i].type)) + " null";
    if (i + 1 < cols.size()) out += ",";
    out += "\n";
  }
  out += ")";
  return out;
}

std::string build_synthesis_prompt(const TableCatalog& catalog, const std::string& question,
                                   bool rows_variant) {
  std::string out;
  for (const auto& [name, table] : catalog.tables()) {
    if (!out.empty()) out += "\n\n";
    out += render_create_table(table);
  }
  if (!out.empty()) out += "\n\n";
  out += "-- External Knowledge: None\n";
  out += rows_variant ? kSynthesisRowsInstruction : kSynthesisAnswerInstruction;
  out += "\n-- " + question + "\nSELECT";
  return out;
}

std::string build_answer_prompt(const Table& rows, const std::string& question,
                                QueryType query_type) {
  std::string out(query_type == QueryType::aggregation ? kAggAnswerInstruction
                                                       : kListAnswerInstruction);
  std::string body = serialize_table(rows);
  if (!body.empty()) out += "\n\n" + body;
  out += "\n\nQuestion: " + question;
  return out;
}

}  // namespace tag::pipeline
