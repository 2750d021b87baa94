#include "tag/plan/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tag/sem/operators.hpp"

namespace tag::plan {
namespace {

// Mirrors SQL predicate semantics: Null fails, eq/ne are defined across
// variants, ordered comparisons on incomparable variants throw.
bool passes_filter(const Value& cell, FilterCmp cmp, const Value& literal) {
  if (cell.is_null() || literal.is_null()) return false;
  switch (cmp) {
    case FilterCmp::eq:
      return predicate_equals(cell, literal);
    case FilterCmp::ne:
      return !predicate_equals(cell, literal);
    case FilterCmp::like: {
      if (cell.type() != ValueType::Text || literal.type() != ValueType::Text) {
        throw TypeError("like filter requires text operands");
      }
      return like_match(cell.as_text(), literal.as_text());
    }
    default: {
      auto c = compare_values(cell, literal);
      if (!c) {
        throw TypeError("cannot order " + std::string(to_string(cell.type())) + " against " +
                        std::string(to_string(literal.type())));
      }
      switch (cmp) {
        case FilterCmp::lt: return *c < 0;
        case FilterCmp::le: return *c <= 0;
        case FilterCmp::gt: return *c > 0;
        case FilterCmp::ge: return *c >= 0;
        default: return false;
      }
    }
  }
}

Table eval_filter(const PlanNode& node, Table in) {
  std::size_t idx = in.schema().require(node.col);
  Table out(in.name(), in.schema());
  for (const auto& row : in.rows()) {
    if (passes_filter(row[idx], node.cmp, node.literal)) out.append_row(row);
  }
  return out;
}

Table eval_is_in(const PlanNode& node, Table in, const Table& sub) {
  std::size_t member_col;
  if (auto found = sub.schema().index_of(node.col)) {
    member_col = *found;
  } else if (sub.column_count() == 1) {
    member_col = 0;
  } else {
    throw PlanError("is_in subplan has no column '" + node.col + "' and is not single-column");
  }
  std::vector<Value> members;
  for (const auto& row : sub.rows()) members.push_back(row[member_col]);

  std::size_t idx = in.schema().require(node.col);
  Table out(in.name(), in.schema());
  for (const auto& row : in.rows()) {
    bool found = false;
    for (const auto& m : members) {
      if (predicate_equals(row[idx], m)) {
        found = true;
        break;
      }
    }
    if (found) out.append_row(row);
  }
  return out;
}

Table eval_unique(const PlanNode& node, const Table& in) {
  std::size_t idx = in.schema().require(node.col);
  Table out(in.name(), Schema({in.schema().at(idx)}));
  std::vector<Value> seen;
  for (const auto& row : in.rows()) {
    const Value& v = row[idx];
    bool dup = false;
    for (const auto& s : seen) {
      if (s == v) {  // key equality: Nulls match each other
        dup = true;
        break;
      }
    }
    if (!dup) {
      seen.push_back(v);
      out.append_row({v});
    }
  }
  return out;
}

Table eval_sort(const PlanNode& node, Table in) {
  std::size_t idx = in.schema().require(node.col);
  auto key = [&](const Value& v) {
    if (node.by_absolute && v.is_numeric()) return Value(std::fabs(v.numeric()));
    return v;
  };
  std::vector<std::size_t> order(in.row_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    int c = total_order(key(in.cell(a, idx)), key(in.cell(b, idx)));
    return node.descending ? c > 0 : c < 0;
  });
  Table out(in.name(), in.schema());
  for (std::size_t i : order) out.append_row(in.row(i));
  return out;
}

Table eval_join(const PlanNode& node, const Table& left, const Table& right) {
  std::size_t li = left.schema().require(node.left_col);
  std::size_t ri = right.schema().require(node.right_col);

  std::vector<Column> columns = left.schema().columns();
  std::string right_prefix = right.name().empty() ? "right" : right.name();
  for (const auto& col : right.schema().columns()) {
    std::string name = col.name;
    for (const auto& existing : left.schema().columns()) {
      if (existing.name == name) {
        name = right_prefix + "." + name;
        break;
      }
    }
    columns.push_back({name, col.type});
  }

  Table out(left.name(), Schema(columns));
  for (const auto& lrow : left.rows()) {
    for (const auto& rrow : right.rows()) {
      if (!predicate_equals(lrow[li], rrow[ri])) continue;
      Row row = lrow;
      row.insert(row.end(), rrow.begin(), rrow.end());
      out.append_row(std::move(row));
    }
  }
  return out;
}

}  // namespace

Table eval_table(const PlanNode& node, const TableCatalog& catalog,
                 const lm::LMBackend& backend) {
  switch (node.op) {
    case OpKind::read:
      return catalog.at(node.table);
    case OpKind::project:
      return project(eval_table(*node.input, catalog, backend), node.cols);
    case OpKind::filter:
      return eval_filter(node, eval_table(*node.input, catalog, backend));
    case OpKind::is_in:
      return eval_is_in(node, eval_table(*node.input, catalog, backend),
                        eval_table(*node.subplan, catalog, backend));
    case OpKind::unique:
      return eval_unique(node, eval_table(*node.input, catalog, backend));
    case OpKind::sort:
      return eval_sort(node, eval_table(*node.input, catalog, backend));
    case OpKind::limit: {
      Table in = eval_table(*node.input, catalog, backend);
      Table out(in.name(), in.schema());
      for (std::size_t i = 0; i < std::min(node.n, in.row_count()); ++i) {
        out.append_row(in.row(i));
      }
      return out;
    }
    case OpKind::join:
      return eval_join(node, eval_table(*node.input, catalog, backend),
                       eval_table(*node.subplan, catalog, backend));
    case OpKind::sem_filter:
      return sem::sem_filter(eval_table(*node.input, catalog, backend),
                             sem::PromptTemplate(node.tpl), backend);
    case OpKind::sem_topk:
      return sem::sem_topk(eval_table(*node.input, catalog, backend),
                           sem::PromptTemplate(node.tpl), node.k, backend);
    case OpKind::sem_map:
      return sem::sem_map(eval_table(*node.input, catalog, backend),
                          sem::PromptTemplate(node.tpl), node.out_col, backend);
    case OpKind::sem_agg:
    case OpKind::extract:
      throw PlanError(std::string(to_string(node.op)) +
                      " produces an answer and must be the terminal operator");
  }
  throw PlanError("unhandled plan op");
}

pipeline::Answer run_plan(const PlanNode& plan, const TableCatalog& catalog,
                          const lm::LMBackend& backend, pipeline::StageTimes* stages) {
  auto t0 = std::chrono::steady_clock::now();
  pipeline::Answer answer;
  if (plan.op == OpKind::extract) {
    Table in = eval_table(*plan.input, catalog, backend);
    if (!plan.cols.empty()) in = project(in, plan.cols);
    answer = pipeline::Answer::list(pipeline::table_to_values(in));
  } else if (plan.op == OpKind::sem_agg) {
    Table in = eval_table(*plan.input, catalog, backend);
    answer = pipeline::Answer::freeform(
        sem::sem_agg(in, plan.instruction, backend, plan.all_cols));
  } else {
    throw PlanError("plan must end in extract or sem_agg, not " +
                    std::string(to_string(plan.op)));
  }
  if (stages) {
    stages->execution_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return answer;
}

}  // namespace tag::plan
