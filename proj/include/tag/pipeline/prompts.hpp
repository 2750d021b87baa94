#pragma once

#include <string>
#include <string_view>

#include "tag/pipeline/request.hpp"
#include "tag/table.hpp"

namespace tag::pipeline {

// Published prompt constants; golden-snapshot tested. Byte-for-byte stable,
// including the "understading" spelling.
inline constexpr std::string_view kSynthesisAnswerInstruction =
    "-- Using valid SQLite and understading External Knowledge, answer the following "
    "questions for the tables provided above.";
inline constexpr std::string_view kSynthesisRowsInstruction =
    "-- Using valid SQLite and understading External Knowledge, write a query that "
    "retrieves the rows needed to answer the following questions for the tables provided "
    "above.";
inline constexpr std::string_view kListAnswerInstruction =
    "You will be given a list of data points and a question. Use the data points to answer "
    "the question. Your answer must be a list of values that is evaluatable in Python. "
    "Respond in the format [value1, value2, ..., valueN]. If you are unable to answer the "
    "question, respond with []. Respond with only the list of values and nothing else. If a "
    "value is a string, it must be enclosed in double quotes.";
inline constexpr std::string_view kAggAnswerInstruction =
    "You will be given a list of data points and a question. Use the data points to answer "
    "the question. If a value is a string, it must be enclosed in double quotes.";

// SQLite-style DDL type names: INTEGER, REAL, TEXT, BOOLEAN.
std::string_view ddl_type_name(ValueType t);

// "CREATE TABLE {name}\n(\n    {col} {TYPE} null,\n    ...\n)".
std::string render_create_table(const Table& t);

// CREATE TABLE blocks for every table (catalog order), external-knowledge
// stub, instruction, the question, then a bare trailing "SELECT" for the
// model to continue. rows_variant asks for the rows needed rather than the
// answer itself.
std::string build_synthesis_prompt(const TableCatalog& catalog, const std::string& question,
                                   bool rows_variant = false);

// Instruction (list form, or free-form for aggregation), serialized rows,
// then "Question: {text}". An empty table contributes no data-point section.
std::string build_answer_prompt(const Table& rows, const std::string& question,
                                QueryType query_type);

}  // namespace tag::pipeline
