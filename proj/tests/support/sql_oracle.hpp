#pragma once

// Reference evaluator for the SQL subset, used to cross-check the engine on
// randomized queries. It restates the documented language rules with its own
// comparison, matching, grouping, naming and sorting code; only the Value and
// Table containers are shared with the engine. Queries are assumed valid (the
// generator guarantees that); surprises throw std::logic_error.
//
// Output names assume bare identifiers, which is all the generator emits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tag/sql/ast.hpp"
#include "tag/table.hpp"

namespace testsup::oracle {

using tag::Table;
using tag::TableCatalog;
using tag::Value;
using tag::ValueType;
namespace sq = tag::sql;

[[noreturn]] inline void bail(const std::string& msg) {
  throw std::logic_error("oracle: " + msg);
}

inline bool num_kind(const Value& v) {
  return v.type() == ValueType::Int || v.type() == ValueType::Float;
}

inline double as_double(const Value& v) {
  return v.type() == ValueType::Int ? static_cast<double>(v.as_int()) : v.as_float();
}

// Equality in predicate position: Null matches nothing, numbers compare by
// value across Int/Float, other kinds only within their own kind.
inline bool pred_eq(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return false;
  if (num_kind(a) && num_kind(b)) return as_double(a) == as_double(b);
  if (a.type() != b.type()) return false;
  if (a.type() == ValueType::Bool) return a.as_bool() == b.as_bool();
  if (a.type() == ValueType::Text) return a.as_text() == b.as_text();
  return false;
}

// Equality in key position (grouping, DISTINCT): as above but Null == Null.
inline bool key_eq(const Value& a, const Value& b) {
  if (a.is_null() && b.is_null()) return true;
  return pred_eq(a, b);
}

// Ordered comparison; nullopt when the kinds cannot be ordered.
inline std::optional<int> ordered_cmp(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return std::nullopt;
  if (num_kind(a) && num_kind(b)) {
    double x = as_double(a), y = as_double(b);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (a.type() != b.type()) return std::nullopt;
  if (a.type() == ValueType::Bool) {
    return static_cast<int>(a.as_bool()) - static_cast<int>(b.as_bool());
  }
  if (a.type() == ValueType::Text) {
    if (a.as_text() < b.as_text()) return -1;
    if (b.as_text() < a.as_text()) return 1;
    return 0;
  }
  return std::nullopt;
}

inline int cmp_or_bail(const Value& a, const Value& b) {
  auto c = ordered_cmp(a, b);
  if (!c) bail("unorderable operands");
  return *c;
}

// Sort order over mixed kinds: Null < Bool < numbers < Text.
inline int sort_cmp(const Value& a, const Value& b) {
  auto kind_rank = [](const Value& v) {
    switch (v.type()) {
      case ValueType::Null: return 0;
      case ValueType::Bool: return 1;
      case ValueType::Int:
      case ValueType::Float: return 2;
      default: return 3;
    }
  };
  int ka = kind_rank(a), kb = kind_rank(b);
  if (ka != kb) return ka < kb ? -1 : 1;
  if (ka == 0) return 0;
  return ordered_cmp(a, b).value_or(0);
}

// Recursive LIKE: '%' matches any run, '_' any single byte, case sensitive.
inline bool like(std::string_view s, std::string_view p) {
  if (p.empty()) return s.empty();
  if (p[0] == '%') {
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (like(s.substr(i), p.substr(1))) return true;
    }
    return false;
  }
  if (s.empty()) return false;
  if (p[0] == '_' || p[0] == s[0]) return like(s.substr(1), p.substr(1));
  return false;
}

struct ColSlot {
  std::string table;
  std::string name;
  ValueType type = ValueType::Text;
};

// Flattened column layout over the FROM table and joins, in source order.
struct Layout {
  std::vector<const Table*> tables;
  std::vector<std::string> labels;
  std::vector<ColSlot> slots;
  std::vector<std::size_t> first_slot;

  std::size_t resolve(const sq::ColumnRef& ref) const {
    if (!ref.table.empty()) {
      for (std::size_t s = 0; s < labels.size(); ++s) {
        if (labels[s] != ref.table) continue;
        // First source with this label wins; the column must live there.
        const auto& schema = tables[s]->schema();
        for (std::size_t c = 0; c < schema.size(); ++c) {
          if (schema.at(c).name == ref.name) return first_slot[s] + c;
        }
        bail("no column " + ref.table + "." + ref.name);
      }
      bail("no source table " + ref.table);
    }
    std::optional<std::size_t> found;
    for (std::size_t s = 0; s < labels.size(); ++s) {
      const auto& schema = tables[s]->schema();
      for (std::size_t c = 0; c < schema.size(); ++c) {
        if (schema.at(c).name != ref.name) continue;
        if (found) bail("ambiguous column " + ref.name);
        found = first_slot[s] + c;
      }
    }
    if (!found) bail("no column " + ref.name);
    return *found;
  }
};

inline Layout build_layout(const sq::SqlAst& ast, const TableCatalog& catalog) {
  Layout lay;
  auto add = [&](const std::string& name) {
    const Table& t = catalog.at(name);
    lay.first_slot.push_back(lay.slots.size());
    lay.labels.push_back(name);
    lay.tables.push_back(&t);
    for (const auto& c : t.schema().columns()) lay.slots.push_back({name, c.name, c.type});
  };
  add(ast.from_table);
  for (const auto& j : ast.joins) add(j.table);
  return lay;
}

using FlatRow = std::vector<Value>;

// Nested loop over source rows, outermost first; each join level keeps only
// combinations whose two key values match in predicate position.
inline void enumerate(const sq::SqlAst& ast, const Layout& lay, std::size_t depth,
                      FlatRow& acc, std::vector<FlatRow>& out) {
  if (depth == lay.tables.size()) {
    out.push_back(acc);
    return;
  }
  for (const auto& row : lay.tables[depth]->rows()) {
    std::size_t mark = acc.size();
    acc.insert(acc.end(), row.begin(), row.end());
    bool keep = true;
    if (depth > 0) {
      const sq::Join& j = ast.joins[depth - 1];
      keep = pred_eq(acc[lay.resolve(j.left)], acc[lay.resolve(j.right)]);
    }
    if (keep) enumerate(ast, lay, depth + 1, acc, out);
    acc.resize(mark);
  }
}

inline Value operand_value(const sq::Operand& op, const Layout& lay, const FlatRow& row) {
  if (const auto* ref = std::get_if<sq::ColumnRef>(&op)) return row[lay.resolve(*ref)];
  return std::get<Value>(op);
}

// Two-valued predicate logic: a Null operand fails its predicate and NOT
// flips the result. All children of AND/OR are evaluated.
inline bool holds(const sq::Expr& e, const Layout& lay, const FlatRow& row) {
  if (const auto* c = std::get_if<sq::Comparison>(&e.node)) {
    Value a = operand_value(c->lhs, lay, row);
    Value b = operand_value(c->rhs, lay, row);
    if (a.is_null() || b.is_null()) return false;
    switch (c->op) {
      case sq::CmpOp::eq: return pred_eq(a, b);
      case sq::CmpOp::ne: return !pred_eq(a, b);
      case sq::CmpOp::lt: return cmp_or_bail(a, b) < 0;
      case sq::CmpOp::le: return cmp_or_bail(a, b) <= 0;
      case sq::CmpOp::gt: return cmp_or_bail(a, b) > 0;
      case sq::CmpOp::ge: return cmp_or_bail(a, b) >= 0;
    }
    return false;
  }
  if (const auto* p = std::get_if<sq::LikePred>(&e.node)) {
    Value v = operand_value(p->lhs, lay, row);
    if (v.is_null()) return false;
    if (v.type() != ValueType::Text) bail("LIKE over non-text");
    bool m = like(v.as_text(), p->pattern);
    return p->negated ? !m : m;
  }
  if (const auto* p = std::get_if<sq::InPred>(&e.node)) {
    Value v = operand_value(p->lhs, lay, row);
    if (v.is_null()) return false;
    bool found = false;
    for (const auto& item : p->items) {
      if (pred_eq(v, item)) found = true;
    }
    return p->negated ? !found : found;
  }
  if (const auto* p = std::get_if<sq::BetweenPred>(&e.node)) {
    Value v = operand_value(p->lhs, lay, row);
    if (v.is_null()) return false;
    // A Null bound empties the range rather than failing the row outright,
    // so NOT BETWEEN over a Null bound holds.
    bool in_range = false;
    if (!p->low.is_null() && !p->high.is_null()) {
      in_range = cmp_or_bail(p->low, v) <= 0 && cmp_or_bail(v, p->high) <= 0;
    }
    return p->negated ? !in_range : in_range;
  }
  if (const auto* a = std::get_if<sq::AndExpr>(&e.node)) {
    bool out = true;
    for (const auto& ch : a->children) {
      if (!holds(ch, lay, row)) out = false;
    }
    return out;
  }
  if (const auto* o = std::get_if<sq::OrExpr>(&e.node)) {
    bool out = false;
    for (const auto& ch : o->children) {
      if (holds(ch, lay, row)) out = true;
    }
    return out;
  }
  const auto& n = std::get<sq::NotExpr>(e.node);
  return !holds(*n.child, lay, row);
}

inline bool has_aggregates(const sq::SqlAst& ast) {
  for (const auto& item : ast.select) {
    if (std::holds_alternative<sq::Aggregate>(item)) return true;
  }
  for (const auto& item : ast.order_by) {
    if (std::holds_alternative<sq::Aggregate>(item.key)) return true;
  }
  return false;
}

inline Value agg_value(const sq::Aggregate& agg, const Layout& lay,
                       const std::vector<const FlatRow*>& rows) {
  if (agg.star) return Value(static_cast<std::int64_t>(rows.size()));
  std::size_t slot = lay.resolve(agg.column);
  std::vector<Value> vals;
  for (const FlatRow* r : rows) {
    if (!(*r)[slot].is_null()) vals.push_back((*r)[slot]);
  }
  if (agg.distinct) {
    std::vector<Value> kept;
    for (const auto& v : vals) {
      bool seen = false;
      for (const auto& k : kept) {
        if (key_eq(k, v)) seen = true;
      }
      if (!seen) kept.push_back(v);
    }
    vals = std::move(kept);
  }
  switch (agg.func) {
    case sq::AggFunc::count:
      return Value(static_cast<std::int64_t>(vals.size()));
    case sq::AggFunc::sum: {
      if (vals.empty()) return Value();
      if (lay.slots[slot].type == ValueType::Int) {
        std::int64_t total = 0;
        for (const auto& v : vals) total += v.as_int();
        return Value(total);
      }
      if (lay.slots[slot].type == ValueType::Float) {
        double total = 0.0;
        for (const auto& v : vals) total += as_double(v);
        return Value(total);
      }
      bail("SUM over non-numeric column");
    }
    case sq::AggFunc::avg: {
      if (vals.empty()) return Value();
      double total = 0.0;
      for (const auto& v : vals) {
        if (!num_kind(v)) bail("AVG over non-numeric column");
        total += as_double(v);
      }
      return Value(total / static_cast<double>(vals.size()));
    }
    case sq::AggFunc::min:
    case sq::AggFunc::max: {
      if (vals.empty()) return Value();
      std::size_t best = 0;
      for (std::size_t i = 1; i < vals.size(); ++i) {
        int c = cmp_or_bail(vals[i], vals[best]);
        if ((agg.func == sq::AggFunc::min && c < 0) ||
            (agg.func == sq::AggFunc::max && c > 0)) {
          best = i;
        }
      }
      return vals[best];
    }
  }
  return Value();
}

inline ValueType agg_type(const sq::Aggregate& agg, const Layout& lay) {
  switch (agg.func) {
    case sq::AggFunc::count: return ValueType::Int;
    case sq::AggFunc::avg: return ValueType::Float;
    case sq::AggFunc::sum: {
      if (agg.star) return ValueType::Int;
      ValueType t = lay.slots[lay.resolve(agg.column)].type;
      return t == ValueType::Int ? ValueType::Int : ValueType::Float;
    }
    case sq::AggFunc::min:
    case sq::AggFunc::max:
      if (agg.star) return ValueType::Null;
      return lay.slots[lay.resolve(agg.column)].type;
  }
  return ValueType::Null;
}

inline std::string func_name(sq::AggFunc f) {
  switch (f) {
    case sq::AggFunc::count: return "count";
    case sq::AggFunc::sum: return "sum";
    case sq::AggFunc::avg: return "avg";
    case sq::AggFunc::min: return "min";
    case sq::AggFunc::max: return "max";
  }
  return "?";
}

inline std::string agg_label(const sq::Aggregate& a) {
  if (a.star) return func_name(a.func) + "(*)";
  std::string col =
      a.column.table.empty() ? a.column.name : a.column.table + "." + a.column.name;
  return func_name(a.func) + "(" + (a.distinct ? "DISTINCT " : "") + col + ")";
}

// First request for a name gets it bare; later requests append _2, _3, ...
inline std::string claim_name(std::vector<std::string>& used, std::string want) {
  auto taken = [&](const std::string& n) {
    return std::find(used.begin(), used.end(), n) != used.end();
  };
  if (taken(want)) {
    std::string base = want;
    for (int k = 2;; ++k) {
      want = base + "_" + std::to_string(k);
      if (!taken(want)) break;
    }
  }
  used.push_back(want);
  return want;
}

// Star expansion names: bare unless the bare name repeats across sources.
inline std::vector<std::string> star_labels(const Layout& lay) {
  std::vector<std::string> out;
  std::vector<std::string> used;
  for (const auto& slot : lay.slots) {
    std::size_t dup = 0;
    for (const auto& other : lay.slots) {
      if (other.name == slot.name) ++dup;
    }
    std::string want = dup > 1 ? slot.table + "." + slot.name : slot.name;
    out.push_back(claim_name(used, want));
  }
  return out;
}

inline Table execute(const sq::SqlAst& ast, const TableCatalog& catalog) {
  Layout lay = build_layout(ast, catalog);
  std::vector<FlatRow> all;
  FlatRow acc;
  enumerate(ast, lay, 0, acc, all);
  if (ast.where) {
    std::vector<FlatRow> kept;
    for (auto& r : all) {
      if (holds(*ast.where, lay, r)) kept.push_back(std::move(r));
    }
    all = std::move(kept);
  }

  bool grouped = !ast.group_by.empty() || has_aggregates(ast);
  std::vector<tag::Column> cols;
  std::vector<tag::Row> data;
  std::vector<std::vector<Value>> sort_vals;
  std::vector<bool> sort_desc;
  std::vector<std::string> used;

  if (grouped) {
    std::vector<std::size_t> gslots;
    for (const auto& ref : ast.group_by) gslots.push_back(lay.resolve(ref));

    // Groups in first-occurrence order; the key holds the first row's values.
    std::vector<std::vector<Value>> gkeys;
    std::vector<std::vector<const FlatRow*>> members;
    for (const auto& r : all) {
      std::vector<Value> key;
      for (std::size_t s : gslots) key.push_back(r[s]);
      std::size_t g = 0;
      for (; g < gkeys.size(); ++g) {
        bool same = true;
        for (std::size_t i = 0; i < key.size(); ++i) {
          if (!key_eq(gkeys[g][i], key[i])) {
            same = false;
            break;
          }
        }
        if (same) break;
      }
      if (g == gkeys.size()) {
        gkeys.push_back(key);
        members.emplace_back();
      }
      members[g].push_back(&r);
    }
    // Aggregates without GROUP BY form one group even over no rows.
    if (ast.group_by.empty() && members.empty()) {
      gkeys.emplace_back();
      members.emplace_back();
    }

    auto key_index_of = [&](const sq::ColumnRef& ref) -> std::size_t {
      std::size_t slot = lay.resolve(ref);
      for (std::size_t i = 0; i < gslots.size(); ++i) {
        if (gslots[i] == slot) return i;
      }
      bail("column not grouped: " + ref.name);
    };

    std::vector<std::function<Value(std::size_t)>> cells;
    if (ast.select_star) {
      std::vector<std::string> labels = star_labels(lay);
      for (std::size_t i = 0; i < lay.slots.size(); ++i) {
        std::size_t ki = key_index_of({lay.slots[i].table, lay.slots[i].name});
        cols.push_back({labels[i], lay.slots[i].type});
        cells.push_back([&gkeys, ki](std::size_t g) { return gkeys[g][ki]; });
      }
    } else {
      for (const auto& item : ast.select) {
        if (const auto* ref = std::get_if<sq::ColumnRef>(&item)) {
          std::size_t ki = key_index_of(*ref);
          cols.push_back({claim_name(used, ref->name), lay.slots[lay.resolve(*ref)].type});
          cells.push_back([&gkeys, ki](std::size_t g) { return gkeys[g][ki]; });
        } else {
          const auto& agg = std::get<sq::Aggregate>(item);
          cols.push_back({claim_name(used, agg_label(agg)), agg_type(agg, lay)});
          std::vector<Value> vals;
          for (const auto& grp : members) vals.push_back(agg_value(agg, lay, grp));
          cells.push_back([vals](std::size_t g) { return vals[g]; });
        }
      }
    }

    for (std::size_t g = 0; g < members.size(); ++g) {
      tag::Row row;
      for (const auto& cell : cells) row.push_back(cell(g));
      data.push_back(std::move(row));
    }

    for (const auto& item : ast.order_by) {
      std::vector<Value> vals;
      if (const auto* ref = std::get_if<sq::ColumnRef>(&item.key)) {
        std::size_t ki = key_index_of(*ref);
        for (const auto& key : gkeys) vals.push_back(key[ki]);
      } else {
        const auto& agg = std::get<sq::Aggregate>(item.key);
        for (const auto& grp : members) vals.push_back(agg_value(agg, lay, grp));
      }
      sort_vals.push_back(std::move(vals));
      sort_desc.push_back(item.descending);
    }
  } else {
    std::vector<std::size_t> picks;
    if (ast.select_star) {
      std::vector<std::string> labels = star_labels(lay);
      for (std::size_t i = 0; i < lay.slots.size(); ++i) {
        cols.push_back({labels[i], lay.slots[i].type});
        picks.push_back(i);
      }
    } else {
      for (const auto& item : ast.select) {
        const auto& ref = std::get<sq::ColumnRef>(item);
        std::size_t slot = lay.resolve(ref);
        cols.push_back({claim_name(used, ref.name), lay.slots[slot].type});
        picks.push_back(slot);
      }
    }
    for (const auto& r : all) {
      tag::Row row;
      for (std::size_t slot : picks) row.push_back(r[slot]);
      data.push_back(std::move(row));
    }
    // Sort keys may use any source column, selected or not.
    for (const auto& item : ast.order_by) {
      std::size_t slot = lay.resolve(std::get<sq::ColumnRef>(item.key));
      std::vector<Value> vals;
      for (const auto& r : all) vals.push_back(r[slot]);
      sort_vals.push_back(std::move(vals));
      sort_desc.push_back(item.descending);
    }
  }

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  if (!sort_vals.empty()) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      for (std::size_t k = 0; k < sort_vals.size(); ++k) {
        int c = sort_cmp(sort_vals[k][a], sort_vals[k][b]);
        if (c != 0) return sort_desc[k] ? c > 0 : c < 0;
      }
      return false;
    });
  }

  std::size_t take = data.size();
  if (ast.limit) take = std::min(take, static_cast<std::size_t>(*ast.limit));

  Table out("result", tag::Schema(std::move(cols)));
  for (std::size_t i = 0; i < take; ++i) out.append_row(std::move(data[order[i]]));
  return out;
}

// Exact equality: same type and same payload, cell by cell.
inline bool exact_value(const Value& a, const Value& b) {
  if (a.type() != b.type()) return false;
  switch (a.type()) {
    case ValueType::Null: return true;
    case ValueType::Bool: return a.as_bool() == b.as_bool();
    case ValueType::Int: return a.as_int() == b.as_int();
    case ValueType::Float: {
      double x = a.as_float(), y = b.as_float();
      return x == y || (std::isnan(x) && std::isnan(y));
    }
    case ValueType::Text: return a.as_text() == b.as_text();
  }
  return false;
}

// Description of the first difference, or nullopt when identical.
inline std::optional<std::string> diff_tables(const Table& got, const Table& want) {
  if (got.name() != want.name()) {
    return "name: " + got.name() + " vs " + want.name();
  }
  if (got.column_count() != want.column_count()) {
    return "column count: " + std::to_string(got.column_count()) + " vs " +
           std::to_string(want.column_count());
  }
  for (std::size_t c = 0; c < got.column_count(); ++c) {
    const auto& ga = got.schema().at(c);
    const auto& wa = want.schema().at(c);
    if (ga.name != wa.name || ga.type != wa.type) {
      return "column " + std::to_string(c) + ": " + ga.name + " " +
             std::string(tag::to_string(ga.type)) + " vs " + wa.name + " " +
             std::string(tag::to_string(wa.type));
    }
  }
  if (got.row_count() != want.row_count()) {
    return "row count: " + std::to_string(got.row_count()) + " vs " +
           std::to_string(want.row_count());
  }
  for (std::size_t r = 0; r < got.row_count(); ++r) {
    for (std::size_t c = 0; c < got.column_count(); ++c) {
      if (!exact_value(got.cell(r, c), want.cell(r, c))) {
        return "cell (" + std::to_string(r) + "," + std::to_string(c) + "): " +
               got.cell(r, c).render() + " [" +
               std::string(tag::to_string(got.cell(r, c).type())) + "] vs " +
               want.cell(r, c).render() + " [" +
               std::string(tag::to_string(want.cell(r, c).type())) + "]";
      }
    }
  }
  return std::nullopt;
}

}  // namespace testsup::oracle
