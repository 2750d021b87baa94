#include "tag/sql/ast.hpp"

#include "sql_detail.hpp"

namespace tag::sql {
namespace {

std::string quote_identifier(const std::string& name) {
  if (detail::is_bare_identifier(name)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool is_compound(const Expr& e) {
  return std::holds_alternative<AndExpr>(e.node) || std::holds_alternative<OrExpr>(e.node) ||
         std::holds_alternative<NotExpr>(e.node);
}

std::string render_operand(const Operand& op) {
  if (const auto* ref = std::get_if<ColumnRef>(&op)) return render(*ref);
  return render_literal(std::get<Value>(op));
}

std::string render_child(const Expr& child, bool parenthesize) {
  std::string s = render(child);
  if (parenthesize) return "(" + s + ")";
  return s;
}

}  // namespace

std::string_view to_string(AggFunc f) {
  switch (f) {
    case AggFunc::count: return "count";
    case AggFunc::sum: return "sum";
    case AggFunc::avg: return "avg";
    case AggFunc::min: return "min";
    case AggFunc::max: return "max";
  }
  return "?";
}

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
  }
  return "?";
}

std::string render(const ColumnRef& ref) {
  if (ref.table.empty()) return quote_identifier(ref.name);
  return quote_identifier(ref.table) + "." + quote_identifier(ref.name);
}

std::string render(const Aggregate& agg) {
  std::string out(to_string(agg.func));
  out.push_back('(');
  if (agg.star) {
    out.push_back('*');
  } else {
    if (agg.distinct) out += "DISTINCT ";
    out += render(agg.column);
  }
  out.push_back(')');
  return out;
}

std::string render_literal(const Value& v) {
  switch (v.type()) {
    case ValueType::Null: return "NULL";
    case ValueType::Bool: return v.as_bool() ? "TRUE" : "FALSE";
    case ValueType::Int: return std::to_string(v.as_int());
    case ValueType::Float: {
      // Keep the literal a Float on re-parse.
      std::string s = render_double(v.as_float());
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      return s;
    }
    case ValueType::Text: {
      std::string out = "'";
      for (char c : v.as_text()) {
        if (c == '\'') out += "''";
        else out.push_back(c);
      }
      out.push_back('\'');
      return out;
    }
  }
  return "NULL";
}

std::string render(const Expr& expr) {
  struct Visitor {
    std::string operator()(const Comparison& c) const {
      return render_operand(c.lhs) + " " + std::string(to_string(c.op)) + " " +
             render_operand(c.rhs);
    }
    std::string operator()(const LikePred& p) const {
      return render_operand(p.lhs) + (p.negated ? " NOT LIKE " : " LIKE ") +
             render_literal(Value(p.pattern));
    }
    std::string operator()(const InPred& p) const {
      std::string out = render_operand(p.lhs) + (p.negated ? " NOT IN (" : " IN (");
      for (std::size_t i = 0; i < p.items.size(); ++i) {
        if (i) out += ", ";
        out += render_literal(p.items[i]);
      }
      out.push_back(')');
      return out;
    }
    std::string operator()(const BetweenPred& p) const {
      return render_operand(p.lhs) + (p.negated ? " NOT BETWEEN " : " BETWEEN ") +
             render_literal(p.low) + " AND " + render_literal(p.high);
    }
    std::string operator()(const AndExpr& e) const {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " AND ";
        out += render_child(e.children[i], std::holds_alternative<OrExpr>(e.children[i].node));
      }
      return out;
    }
    std::string operator()(const OrExpr& e) const {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " OR ";
        out += render(e.children[i]);
      }
      return out;
    }
    std::string operator()(const NotExpr& e) const {
      return "NOT " + render_child(*e.child, is_compound(*e.child));
    }
  };
  return std::visit(Visitor{}, expr.node);
}

std::string render(const SqlAst& ast) {
  std::string out = "SELECT ";
  if (ast.select_star) {
    out.push_back('*');
  } else {
    for (std::size_t i = 0; i < ast.select.size(); ++i) {
      if (i) out += ", ";
      if (const auto* ref = std::get_if<ColumnRef>(&ast.select[i])) out += render(*ref);
      else out += render(std::get<Aggregate>(ast.select[i]));
    }
  }
  out += " FROM " + quote_identifier(ast.from_table);
  for (const auto& j : ast.joins) {
    out += " JOIN " + quote_identifier(j.table) + " ON " + render(j.left) + " = " +
           render(j.right);
  }
  if (ast.where) out += " WHERE " + render(*ast.where);
  if (!ast.group_by.empty()) {
    out += " GROUP BY ";
    for (std::size_t i = 0; i < ast.group_by.size(); ++i) {
      if (i) out += ", ";
      out += render(ast.group_by[i]);
    }
  }
  if (!ast.order_by.empty()) {
    out += " ORDER BY ";
    for (std::size_t i = 0; i < ast.order_by.size(); ++i) {
      if (i) out += ", ";
      if (const auto* ref = std::get_if<ColumnRef>(&ast.order_by[i].key)) out += render(*ref);
      else out += render(std::get<Aggregate>(ast.order_by[i].key));
      out += ast.order_by[i].descending ? " DESC" : " ASC";
    }
  }
  if (ast.limit) out += " LIMIT " + std::to_string(*ast.limit);
  return out;
}

}  // namespace tag::sql
