#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tag/value.hpp"

namespace tag::sql {

enum class AggFunc { count, sum, avg, min, max };

std::string_view to_string(AggFunc f);

// Optionally table-qualified column name; empty table means unqualified.
struct ColumnRef {
  std::string table;
  std::string name;

  bool operator==(const ColumnRef&) const = default;
};

struct Aggregate {
  AggFunc func = AggFunc::count;
  bool star = false;  // COUNT(*)
  bool distinct = false;
  ColumnRef column;   // ignored when star

  bool operator==(const Aggregate&) const = default;
};

using SelectItem = std::variant<ColumnRef, Aggregate>;

enum class CmpOp { eq, ne, lt, le, gt, ge };

std::string_view to_string(CmpOp op);

using Operand = std::variant<ColumnRef, Value>;

struct Comparison {
  Operand lhs;
  CmpOp op = CmpOp::eq;
  Operand rhs;
};

struct LikePred {
  Operand lhs;
  std::string pattern;
  bool negated = false;
};

struct InPred {
  Operand lhs;
  std::vector<Value> items;
  bool negated = false;
};

struct BetweenPred {
  Operand lhs;
  Value low;
  Value high;
  bool negated = false;
};

struct Expr;

struct AndExpr {
  std::vector<Expr> children;  // two or more
};

struct OrExpr {
  std::vector<Expr> children;  // two or more
};

struct NotExpr {
  std::shared_ptr<const Expr> child;
};

struct Expr {
  std::variant<Comparison, LikePred, InPred, BetweenPred, AndExpr, OrExpr, NotExpr> node;
};

struct OrderItem {
  std::variant<ColumnRef, Aggregate> key;
  bool descending = false;
};

struct Join {
  std::string table;
  ColumnRef left;
  ColumnRef right;
};

struct SqlAst {
  bool select_star = false;
  std::vector<SelectItem> select;  // empty iff select_star
  std::string from_table;
  std::vector<Join> joins;
  std::optional<Expr> where;
  std::vector<ColumnRef> group_by;
  std::vector<OrderItem> order_by;
  std::optional<std::int64_t> limit;
};

// Canonical text form; parse(render(ast)) reproduces the same tree.
std::string render(const SqlAst& ast);
std::string render(const Expr& expr);
std::string render(const ColumnRef& ref);
std::string render(const Aggregate& agg);
std::string render_literal(const Value& v);

}  // namespace tag::sql
