#include "tag/sql/executor.hpp"

#include <algorithm>
#include <functional>

#include "tag/errors.hpp"
#include "tag/sql/parser.hpp"

namespace tag::sql {
namespace {

struct Source {
  std::string table_name;
  const Table* table;
};

struct Bound {
  std::size_t src = 0;
  std::size_t col = 0;

  bool operator==(const Bound&) const = default;
};

class Env {
 public:
  Env(const SqlAst& ast, const TableCatalog& catalog) {
    sources_.push_back({ast.from_table, &catalog.at(ast.from_table)});
    for (const auto& j : ast.joins) {
      sources_.push_back({j.table, &catalog.at(j.table)});
    }
  }

  const std::vector<Source>& sources() const { return sources_; }

  // Unqualified names resolve when exactly one source has the column; a
  // repeated table name resolves to its first occurrence.
  std::optional<Bound> resolve(const ColumnRef& ref, std::string* problem) const {
    if (!ref.table.empty()) {
      for (std::size_t s = 0; s < sources_.size(); ++s) {
        if (sources_[s].table_name != ref.table) continue;
        if (auto c = sources_[s].table->schema().index_of(ref.name)) {
          return Bound{s, *c};
        }
        if (problem) *problem = ref.table + "." + ref.name;
        return std::nullopt;
      }
      if (problem) *problem = ref.table + "." + ref.name;
      return std::nullopt;
    }
    std::optional<Bound> found;
    for (std::size_t s = 0; s < sources_.size(); ++s) {
      if (auto c = sources_[s].table->schema().index_of(ref.name)) {
        if (found) {
          if (problem) *problem = ref.name + " (ambiguous)";
          return std::nullopt;
        }
        found = Bound{s, *c};
      }
    }
    if (!found && problem) *problem = ref.name;
    return found;
  }

  Bound require(const ColumnRef& ref) const {
    std::string problem;
    if (auto b = resolve(ref, &problem)) return *b;
    throw SemanticError("unresolved column: " + problem);
  }

  const Column& column(Bound b) const { return sources_[b.src].table->schema().at(b.col); }

  std::size_t flat_index(Bound b) const {
    std::size_t off = 0;
    for (std::size_t s = 0; s < b.src; ++s) off += sources_[s].table->column_count();
    return off + b.col;
  }

 private:
  std::vector<Source> sources_;
};

bool ast_has_aggregates(const SqlAst& ast) {
  for (const auto& item : ast.select) {
    if (std::holds_alternative<Aggregate>(item)) return true;
  }
  for (const auto& item : ast.order_by) {
    if (std::holds_alternative<Aggregate>(item.key)) return true;
  }
  return false;
}

void collect_expr_refs(const Expr& e, std::vector<const ColumnRef*>& out) {
  auto from_operand = [&](const Operand& op) {
    if (const auto* ref = std::get_if<ColumnRef>(&op)) out.push_back(ref);
  };
  if (const auto* c = std::get_if<Comparison>(&e.node)) {
    from_operand(c->lhs);
    from_operand(c->rhs);
  } else if (const auto* p = std::get_if<LikePred>(&e.node)) {
    from_operand(p->lhs);
  } else if (const auto* p = std::get_if<InPred>(&e.node)) {
    from_operand(p->lhs);
  } else if (const auto* p = std::get_if<BetweenPred>(&e.node)) {
    from_operand(p->lhs);
  } else if (const auto* a = std::get_if<AndExpr>(&e.node)) {
    for (const auto& ch : a->children) collect_expr_refs(ch, out);
  } else if (const auto* o = std::get_if<OrExpr>(&e.node)) {
    for (const auto& ch : o->children) collect_expr_refs(ch, out);
  } else if (const auto* n = std::get_if<NotExpr>(&e.node)) {
    collect_expr_refs(*n->child, out);
  }
}

// Combined row across all sources, in source order.
using FlatRow = std::vector<Value>;

Value eval_operand(const Operand& op, const Env& env, const FlatRow& row) {
  if (const auto* ref = std::get_if<ColumnRef>(&op)) {
    return row[env.flat_index(env.require(*ref))];
  }
  return std::get<Value>(op);
}

int compare_or_throw(const Value& a, const Value& b) {
  auto c = compare_values(a, b);
  if (!c) {
    throw TypeError("cannot compare " + std::string(to_string(a.type())) + " to " +
                    std::string(to_string(b.type())));
  }
  return *c;
}

bool eval_comparison(CmpOp op, const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return false;
  if (op == CmpOp::eq) return predicate_equals(a, b);
  if (op == CmpOp::ne) return !predicate_equals(a, b);
  int c = compare_or_throw(a, b);
  switch (op) {
    case CmpOp::lt: return c < 0;
    case CmpOp::le: return c <= 0;
    case CmpOp::gt: return c > 0;
    case CmpOp::ge: return c >= 0;
    default: return false;
  }
}

// Two-valued logic: Null operands fail their predicate, NOT flips the result.
// Children are evaluated eagerly so type errors surface regardless of
// position.
bool eval_expr(const Expr& e, const Env& env, const FlatRow& row) {
  struct Visitor {
    const Env& env;
    const FlatRow& row;

    bool operator()(const Comparison& c) const {
      Value a = eval_operand(c.lhs, env, row);
      Value b = eval_operand(c.rhs, env, row);
      // eq/ne across incompatible variants is defined (unequal); ordered
      // comparisons require comparable variants.
      return eval_comparison(c.op, a, b);
    }
    bool operator()(const LikePred& p) const {
      Value v = eval_operand(p.lhs, env, row);
      if (v.is_null()) return false;
      if (v.type() != ValueType::Text) {
        throw TypeError("LIKE requires a text operand");
      }
      bool m = like_match(v.as_text(), p.pattern);
      return p.negated ? !m : m;
    }
    bool operator()(const InPred& p) const {
      Value v = eval_operand(p.lhs, env, row);
      if (v.is_null()) return false;
      bool found = false;
      for (const auto& item : p.items) {
        if (predicate_equals(v, item)) {
          found = true;
        }
      }
      return p.negated ? !found : found;
    }
    bool operator()(const BetweenPred& p) const {
      Value v = eval_operand(p.lhs, env, row);
      if (v.is_null()) return false;
      bool in_range = false;
      if (!p.low.is_null() && !p.high.is_null()) {
        in_range = compare_or_throw(p.low, v) <= 0 && compare_or_throw(v, p.high) <= 0;
      }
      return p.negated ? !in_range : in_range;
    }
    bool operator()(const AndExpr& a) const {
      bool out = true;
      for (const auto& ch : a.children) out = eval_expr(ch, env, row) && out;
      return out;
    }
    bool operator()(const OrExpr& o) const {
      bool out = false;
      for (const auto& ch : o.children) out = eval_expr(ch, env, row) || out;
      return out;
    }
    bool operator()(const NotExpr& n) const { return !eval_expr(*n.child, env, row); }
  };
  return std::visit(Visitor{env, row}, e.node);
}

std::vector<FlatRow> enumerate_rows(const SqlAst& ast, const Env& env) {
  std::vector<FlatRow> out;
  const auto& sources = env.sources();
  FlatRow current;
  std::function<void(std::size_t)> recurse = [&](std::size_t s) {
    if (s == sources.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& row : sources[s].table->rows()) {
      std::size_t before = current.size();
      current.insert(current.end(), row.begin(), row.end());
      bool keep = true;
      if (s > 0) {
        const Join& j = ast.joins[s - 1];
        Value l = current[env.flat_index(env.require(j.left))];
        Value r = current[env.flat_index(env.require(j.right))];
        keep = predicate_equals(l, r);
      }
      if (keep) recurse(s + 1);
      current.resize(before);
    }
  };
  recurse(0);
  return out;
}

struct AggResult {
  Value value;
};

Value compute_aggregate(const Aggregate& agg, const Env& env,
                        const std::vector<const FlatRow*>& group) {
  if (agg.star) {
    return Value(static_cast<std::int64_t>(group.size()));
  }
  std::size_t idx = env.flat_index(env.require(agg.column));
  std::vector<Value> values;
  values.reserve(group.size());
  for (const FlatRow* row : group) {
    const Value& v = (*row)[idx];
    if (v.is_null()) continue;
    values.push_back(v);
  }
  if (agg.distinct) {
    std::vector<Value> unique;
    for (const auto& v : values) {
      bool seen = false;
      for (const auto& u : unique) {
        if (u == v) {
          seen = true;
          break;
        }
      }
      if (!seen) unique.push_back(v);
    }
    values = std::move(unique);
  }
  switch (agg.func) {
    case AggFunc::count:
      return Value(static_cast<std::int64_t>(values.size()));
    case AggFunc::sum: {
      if (values.empty()) return Value();
      ValueType t = env.column(env.require(agg.column)).type;
      if (t == ValueType::Int) {
        std::int64_t total = 0;
        for (const auto& v : values) total += v.as_int();
        return Value(total);
      }
      if (t == ValueType::Float) {
        double total = 0.0;
        for (const auto& v : values) total += v.numeric();
        return Value(total);
      }
      throw TypeError("SUM requires a numeric column");
    }
    case AggFunc::avg: {
      if (values.empty()) return Value();
      double total = 0.0;
      for (const auto& v : values) {
        if (!v.is_numeric()) throw TypeError("AVG requires a numeric column");
        total += v.numeric();
      }
      return Value(total / static_cast<double>(values.size()));
    }
    case AggFunc::min:
    case AggFunc::max: {
      if (values.empty()) return Value();
      const Value* best = &values[0];
      for (std::size_t i = 1; i < values.size(); ++i) {
        int c = compare_or_throw(values[i], *best);
        if ((agg.func == AggFunc::min && c < 0) || (agg.func == AggFunc::max && c > 0)) {
          best = &values[i];
        }
      }
      return *best;
    }
  }
  return Value();
}

ValueType aggregate_output_type(const Aggregate& agg, const Env& env) {
  switch (agg.func) {
    case AggFunc::count: return ValueType::Int;
    case AggFunc::avg: return ValueType::Float;
    case AggFunc::sum: {
      if (agg.star) return ValueType::Int;
      ValueType t = env.column(env.require(agg.column)).type;
      return t == ValueType::Int ? ValueType::Int : ValueType::Float;
    }
    case AggFunc::min:
    case AggFunc::max:
      if (agg.star) return ValueType::Null;
      return env.column(env.require(agg.column)).type;
  }
  return ValueType::Null;
}

std::string unique_name(std::vector<std::string>& taken, std::string candidate) {
  auto used = [&](const std::string& n) {
    return std::find(taken.begin(), taken.end(), n) != taken.end();
  };
  if (used(candidate)) {
    std::string base = candidate;
    int k = 2;
    do {
      candidate = base + "_" + std::to_string(k++);
    } while (used(candidate));
  }
  taken.push_back(candidate);
  return candidate;
}

// Output name for a star expansion: bare when unique across the join, else
// table-qualified.
std::vector<std::string> star_names(const Env& env) {
  std::vector<std::string> bare;
  for (const auto& s : env.sources()) {
    for (const auto& c : s.table->schema().columns()) bare.push_back(c.name);
  }
  std::vector<std::string> taken;
  std::vector<std::string> out;
  for (const auto& s : env.sources()) {
    for (const auto& c : s.table->schema().columns()) {
      bool dup = std::count(bare.begin(), bare.end(), c.name) > 1;
      std::string candidate = dup ? s.table_name + "." + c.name : c.name;
      out.push_back(unique_name(taken, std::move(candidate)));
    }
  }
  return out;
}

struct SortKeySpec {
  bool descending = false;
  std::function<Value(std::size_t)> key;  // by output row index
};

void stable_sort_indices(std::vector<std::size_t>& order,
                         const std::vector<SortKeySpec>& keys) {
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (const auto& k : keys) {
      int c = total_order(k.key(a), k.key(b));
      if (c != 0) return k.descending ? c > 0 : c < 0;
    }
    return false;
  });
}

}  // namespace

void validate(const SqlAst& ast, const TableCatalog& catalog) {
  Env env(ast, catalog);
  std::vector<std::string> problems;
  auto check = [&](const ColumnRef& ref) {
    std::string problem;
    if (!env.resolve(ref, &problem)) problems.push_back(problem);
  };
  for (const auto& item : ast.select) {
    if (const auto* ref = std::get_if<ColumnRef>(&item)) check(*ref);
    else if (const auto& agg = std::get<Aggregate>(item); !agg.star) check(agg.column);
  }
  for (std::size_t k = 0; k < ast.joins.size(); ++k) {
    const auto& j = ast.joins[k];
    check(j.left);
    check(j.right);
    // A join condition may only reference tables joined so far (left-deep
    // evaluation order).
    for (const ColumnRef* ref : {&j.left, &j.right}) {
      std::string ignore;
      if (auto b = env.resolve(*ref, &ignore); b && b->src > k + 1) {
        throw SemanticError("join condition references table joined later: " +
                            ref->name);
      }
    }
  }
  if (ast.where) {
    std::vector<const ColumnRef*> refs;
    collect_expr_refs(*ast.where, refs);
    for (const auto* ref : refs) check(*ref);
  }
  for (const auto& ref : ast.group_by) check(ref);
  for (const auto& item : ast.order_by) {
    if (const auto* ref = std::get_if<ColumnRef>(&item.key)) check(*ref);
    else if (const auto& agg = std::get<Aggregate>(item.key); !agg.star) check(agg.column);
  }
  if (!problems.empty()) {
    std::string msg = "unresolved names:";
    for (const auto& p : problems) msg += " " + p;
    throw SemanticError(msg);
  }

  bool grouped = !ast.group_by.empty() || ast_has_aggregates(ast);
  if (grouped) {
    std::vector<Bound> group_bindings;
    group_bindings.reserve(ast.group_by.size());
    for (const auto& ref : ast.group_by) group_bindings.push_back(env.require(ref));
    auto in_group = [&](const ColumnRef& ref) {
      Bound b = env.require(ref);
      return std::find(group_bindings.begin(), group_bindings.end(), b) !=
             group_bindings.end();
    };
    if (ast.select_star) {
      for (std::size_t s = 0; s < env.sources().size(); ++s) {
        const auto& schema = env.sources()[s].table->schema();
        for (std::size_t c = 0; c < schema.size(); ++c) {
          if (std::find(group_bindings.begin(), group_bindings.end(), Bound{s, c}) ==
              group_bindings.end()) {
            throw SemanticError("SELECT * requires every column in GROUP BY");
          }
        }
      }
    }
    for (const auto& item : ast.select) {
      if (const auto* ref = std::get_if<ColumnRef>(&item)) {
        if (!in_group(*ref)) {
          throw SemanticError("column " + ref->name +
                              " must appear in GROUP BY or an aggregate");
        }
      }
    }
    for (const auto& item : ast.order_by) {
      if (const auto* ref = std::get_if<ColumnRef>(&item.key)) {
        if (!in_group(*ref)) {
          throw SemanticError("ORDER BY column " + ref->name +
                              " must appear in GROUP BY in an aggregated query");
        }
      }
    }
  } else {
    for (const auto& item : ast.order_by) {
      if (std::holds_alternative<Aggregate>(item.key)) {
        throw SemanticError("aggregate in ORDER BY requires aggregation");
      }
    }
  }
}

Table execute_sql(const SqlAst& ast, const TableCatalog& catalog) {
  validate(ast, catalog);
  Env env(ast, catalog);
  std::vector<FlatRow> rows = enumerate_rows(ast, env);
  if (ast.where) {
    std::vector<FlatRow> kept;
    kept.reserve(rows.size());
    for (auto& r : rows) {
      if (eval_expr(*ast.where, env, r)) kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }

  bool grouped = !ast.group_by.empty() || ast_has_aggregates(ast);
  std::vector<std::string> taken_names;
  std::vector<Column> out_cols;
  std::vector<Row> out_rows;
  std::vector<SortKeySpec> sort_keys;

  if (grouped) {
    std::vector<Bound> group_bindings;
    for (const auto& ref : ast.group_by) group_bindings.push_back(env.require(ref));
    std::vector<std::size_t> group_flat;
    for (Bound b : group_bindings) group_flat.push_back(env.flat_index(b));

    // Groups in first-occurrence order; keys compare with Nulls equal.
    std::vector<std::vector<Value>> keys;
    std::vector<std::vector<const FlatRow*>> groups;
    for (const auto& r : rows) {
      std::vector<Value> key;
      key.reserve(group_flat.size());
      for (std::size_t i : group_flat) key.push_back(r[i]);
      std::size_t g = 0;
      for (; g < keys.size(); ++g) {
        bool same = true;
        for (std::size_t i = 0; i < key.size(); ++i) {
          const Value& a = keys[g][i];
          const Value& b = key[i];
          bool eq = (a.is_null() && b.is_null()) || a == b;
          if (!eq) {
            same = false;
            break;
          }
        }
        if (same) break;
      }
      if (g == keys.size()) {
        keys.push_back(key);
        groups.emplace_back();
      }
      groups[g].push_back(&r);
    }
    if (ast.group_by.empty()) {
      // Aggregates without GROUP BY: one group, even over no rows.
      if (groups.empty()) {
        keys.emplace_back();
        groups.emplace_back();
      }
    }

    auto key_slot = [&](const ColumnRef& ref) -> std::size_t {
      Bound b = env.require(ref);
      for (std::size_t i = 0; i < group_bindings.size(); ++i) {
        if (group_bindings[i] == b) return i;
      }
      throw SemanticError("column not in GROUP BY: " + ref.name);
    };

    // Output columns.
    struct OutSpec {
      bool is_group_key = false;
      std::size_t key_index = 0;
      const Aggregate* agg = nullptr;
    };
    std::vector<OutSpec> specs;
    if (ast.select_star) {
      for (std::size_t s = 0; s < env.sources().size(); ++s) {
        const auto& schema = env.sources()[s].table->schema();
        for (std::size_t c = 0; c < schema.size(); ++c) {
          ColumnRef ref{env.sources()[s].table_name, schema.at(c).name};
          specs.push_back({true, key_slot(ref), nullptr});
        }
      }
      for (const std::string& name : star_names(env)) taken_names.push_back(name);
      std::size_t i = 0;
      for (const auto& s : env.sources()) {
        for (const auto& c : s.table->schema().columns()) {
          out_cols.push_back({taken_names[i++], c.type});
        }
      }
    } else {
      for (const auto& item : ast.select) {
        if (const auto* ref = std::get_if<ColumnRef>(&item)) {
          specs.push_back({true, key_slot(*ref), nullptr});
          Bound b = env.require(*ref);
          out_cols.push_back({unique_name(taken_names, ref->name), env.column(b).type});
        } else {
          const auto& agg = std::get<Aggregate>(item);
          specs.push_back({false, 0, &agg});
          out_cols.push_back(
              {unique_name(taken_names, render(agg)), aggregate_output_type(agg, env)});
        }
      }
    }

    out_rows.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      Row r;
      r.reserve(specs.size());
      for (const auto& spec : specs) {
        if (spec.is_group_key) r.push_back(keys[g][spec.key_index]);
        else r.push_back(compute_aggregate(*spec.agg, env, groups[g]));
      }
      out_rows.push_back(std::move(r));
    }

    for (const auto& item : ast.order_by) {
      SortKeySpec spec;
      spec.descending = item.descending;
      if (const auto* ref = std::get_if<ColumnRef>(&item.key)) {
        std::size_t slot = key_slot(*ref);
        std::vector<Value> values;
        values.reserve(keys.size());
        for (const auto& k : keys) values.push_back(k[slot]);
        spec.key = [values](std::size_t g) { return values[g]; };
      } else {
        const auto& agg = std::get<Aggregate>(item.key);
        std::vector<Value> values;
        values.reserve(groups.size());
        for (const auto& grp : groups) values.push_back(compute_aggregate(agg, env, grp));
        spec.key = [values](std::size_t g) { return values[g]; };
      }
      sort_keys.push_back(std::move(spec));
    }
  } else {
    std::vector<std::size_t> flat_indices;
    if (ast.select_star) {
      for (const std::string& name : star_names(env)) taken_names.push_back(name);
      std::size_t i = 0;
      for (const auto& s : env.sources()) {
        for (std::size_t c = 0; c < s.table->column_count(); ++c) {
          out_cols.push_back({taken_names[i], s.table->schema().at(c).type});
          flat_indices.push_back(i);
          ++i;
        }
      }
    } else {
      for (const auto& item : ast.select) {
        const auto& ref = std::get<ColumnRef>(item);
        Bound b = env.require(ref);
        out_cols.push_back({unique_name(taken_names, ref.name), env.column(b).type});
        flat_indices.push_back(env.flat_index(b));
      }
    }
    out_rows.reserve(rows.size());
    for (const auto& r : rows) {
      Row nr;
      nr.reserve(flat_indices.size());
      for (std::size_t i : flat_indices) nr.push_back(r[i]);
      out_rows.push_back(std::move(nr));
    }
    // ORDER BY may reference any source column, selected or not.
    for (const auto& item : ast.order_by) {
      const auto& ref = std::get<ColumnRef>(item.key);
      std::size_t flat = env.flat_index(env.require(ref));
      SortKeySpec spec;
      spec.descending = item.descending;
      std::vector<Value> values;
      values.reserve(rows.size());
      for (const auto& r : rows) values.push_back(r[flat]);
      spec.key = [values](std::size_t i) { return values[i]; };
      sort_keys.push_back(std::move(spec));
    }
  }

  std::vector<std::size_t> order(out_rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (!sort_keys.empty()) stable_sort_indices(order, sort_keys);

  std::size_t limit = out_rows.size();
  if (ast.limit) limit = std::min<std::size_t>(limit, static_cast<std::size_t>(*ast.limit));

  Table out("result", Schema(std::move(out_cols)));
  for (std::size_t i = 0; i < limit; ++i) out.append_row(std::move(out_rows[order[i]]));
  return out;
}

}  // namespace tag::sql
