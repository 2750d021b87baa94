#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tag/lm/backend.hpp"
#include "tag/sem/prompt_template.hpp"
#include "tag/table.hpp"

namespace tag::sem {

// Non-fatal notes raised by operators (e.g. unparseable scores).
struct Warnings {
  std::vector<std::string> messages;

  void add(std::string m) { messages.push_back(std::move(m)); }
};

// Published prompt constants; golden-snapshot tested.
inline constexpr std::string_view kFilterInstruction = "Answer True or False.";
inline constexpr std::string_view kTopkInstruction =
    "Rate how well this item satisfies the criterion, 0.0 to 1.0. Respond with only the "
    "number.";

// One LM call per row; keeps rows whose response, trimmed and lower-cased,
// starts with "true". Schema and relative order preserved.
Table sem_filter(const Table& t, const PromptTemplate& tpl, const lm::LMBackend& backend);

// One scoring call per row; rows stable-sorted by score descending, ties by
// original position; returns min(k, rows) rows. Unparseable scores become
// 0.0 with a warning.
Table sem_topk(const Table& t, const PromptTemplate& tpl, int k, const lm::LMBackend& backend,
               Warnings* warnings = nullptr);

// Hierarchical fold: serialized chunks that fit the backend's context budget
// are aggregated, then partial answers are aggregated with the same
// instruction until one remains. The empty table still makes one call.
// Columns: all when use_all_columns, else those referenced by {placeholders}
// in the instruction (all if it references none).
std::string sem_agg(const Table& t, const std::string& instruction,
                    const lm::LMBackend& backend, bool use_all_columns);

// Appends a Text column holding one LM response per row.
Table sem_map(const Table& t, const PromptTemplate& tpl, const std::string& out_column,
              const lm::LMBackend& backend);

// First decimal number in the text, if any ("0.7", "-1", ".5", "score: 3").
std::optional<double> parse_first_decimal(std::string_view text);

// Prompt builders, exposed for snapshot tests.
std::string build_filter_prompt(const std::string& claim);
std::string build_topk_prompt(const std::string& item);
std::string build_agg_prompt(const std::string& instruction, const std::string& table_text);

}  // namespace tag::sem
