#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "tag/errors.hpp"
#include "tag/value.hpp"

namespace tag::plan {

enum class OpKind {
  read,
  project,
  filter,
  is_in,
  unique,
  sort,
  limit,
  join,
  sem_filter,
  sem_topk,
  sem_agg,
  sem_map,
  extract,
};

std::string_view to_string(OpKind op);
OpKind parse_op_kind(std::string_view s);  // throws PlanError

enum class FilterCmp { eq, ne, lt, le, gt, ge, like };

FilterCmp parse_filter_cmp(std::string_view s);  // "=", "!=", "<", ..., "like"

// One operator of a hand-written query plan. `input` is the main child;
// is_in and join carry an extra `subplan`.
struct PlanNode {
  OpKind op = OpKind::read;

  std::string table;              // read
  std::vector<std::string> cols;  // project; extract (empty = all)
  std::string col;                // filter, is_in, unique, sort
  FilterCmp cmp = FilterCmp::eq;  // filter
  Value literal;                  // filter
  bool descending = false;        // sort
  bool by_absolute = false;       // sort
  std::size_t n = 0;              // limit
  std::string left_col;           // join
  std::string right_col;          // join
  std::string tpl;                // sem_filter, sem_topk, sem_map
  int k = 0;                      // sem_topk
  std::string instruction;        // sem_agg
  bool all_cols = true;           // sem_agg
  std::string out_col;            // sem_map

  std::unique_ptr<PlanNode> input;
  std::unique_ptr<PlanNode> subplan;
};

// Parses one operator tree from its JSON text. Throws PlanError on missing
// or ill-typed keys.
std::unique_ptr<PlanNode> parse_plan(const std::string& json_text);

struct PlanFile {
  std::string case_id;
  std::unique_ptr<PlanNode> plan;
};

// {"case_id": ..., "plan": {...}}. Throws IoError when unreadable.
PlanFile load_plan_file(const std::filesystem::path& path);

}  // namespace tag::plan
