#pragma once

// Random query builder for the engine/reference cross-checks. Every query is
// valid for its catalog by construction: references resolve unambiguously,
// ordered comparisons stay within comparable kinds, LIKE only sees text
// columns, SUM/AVG only numeric ones, and aggregates reach ORDER BY only in
// aggregated queries.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gen.hpp"
#include "tag/sql/ast.hpp"
#include "tag/table.hpp"

namespace testsup {

namespace sq = tag::sql;

struct GenCol {
  std::string table;
  std::string name;
  tag::ValueType type = tag::ValueType::Text;
};

class QueryGen {
 public:
  QueryGen(Rng& rng, const tag::TableCatalog& catalog) : rng_(rng), catalog_(catalog) {}

  sq::SqlAst random_query() {
    sq::SqlAst ast;
    pick_sources(ast);
    collect_columns(ast);
    if (chance(rng_, 0.3)) {
      build_grouped(ast);
    } else {
      build_plain(ast);
    }
    if (chance(rng_, 0.55)) ast.where = expr(2, Compound::none);
    if (chance(rng_, 0.4)) ast.limit = rint(rng_, 0, 6);
    return ast;
  }

 private:
  enum class Compound { none, and_, or_ };

  Rng& rng_;
  const tag::TableCatalog& catalog_;
  std::vector<GenCol> cols_;

  void pick_sources(sq::SqlAst& ast) {
    std::vector<std::string> names;
    for (const auto& [name, table] : catalog_.tables()) names.push_back(name);
    std::shuffle(names.begin(), names.end(), rng_);
    ast.from_table = names[0];
    std::size_t extra = 1;
    while (extra < names.size() && ast.joins.size() < 2 && chance(rng_, 0.35)) {
      sq::Join j;
      j.table = names[extra++];
      j.right = {j.table, numeric_column_of(j.table)};
      const std::string& left_table =
          ast.joins.empty() || chance(rng_, 0.7)
              ? ast.from_table
              : ast.joins[static_cast<std::size_t>(
                              rint(rng_, 0, static_cast<std::int64_t>(ast.joins.size()) - 1))]
                    .table;
      j.left = {left_table, numeric_column_of(left_table)};
      ast.joins.push_back(std::move(j));
    }
  }

  std::string numeric_column_of(const std::string& table) {
    std::vector<std::string> numeric;
    for (const auto& c : catalog_.at(table).schema().columns()) {
      if (c.type == tag::ValueType::Int || c.type == tag::ValueType::Float) {
        numeric.push_back(c.name);
      }
    }
    // "k" always exists, but prefer it so joins actually hit.
    if (chance(rng_, 0.7)) return "k";
    return pick(rng_, numeric);
  }

  void collect_columns(const sq::SqlAst& ast) {
    cols_.clear();
    auto add = [&](const std::string& table) {
      for (const auto& c : catalog_.at(table).schema().columns()) {
        cols_.push_back({table, c.name, c.type});
      }
    };
    add(ast.from_table);
    for (const auto& j : ast.joins) add(j.table);
  }

  const GenCol& any_col() { return pick(rng_, cols_); }

  std::optional<GenCol> col_where(bool (*want)(tag::ValueType)) {
    std::vector<GenCol> pool;
    for (const auto& c : cols_) {
      if (want(c.type)) pool.push_back(c);
    }
    if (pool.empty()) return std::nullopt;
    return pick(rng_, pool);
  }

  bool ambiguous(const std::string& name) const {
    std::size_t n = 0;
    for (const auto& c : cols_) {
      if (c.name == name) ++n;
    }
    return n > 1;
  }

  sq::ColumnRef make_ref(const GenCol& col) {
    bool qualify = ambiguous(col.name) || chance(rng_, 0.6);
    return {qualify ? col.table : std::string(), col.name};
  }

  static bool is_numeric_type(tag::ValueType t) {
    return t == tag::ValueType::Int || t == tag::ValueType::Float;
  }

  tag::Value literal_for(tag::ValueType t) {
    if (is_numeric_type(t) && chance(rng_, 0.3)) {
      t = t == tag::ValueType::Int ? tag::ValueType::Float : tag::ValueType::Int;
    }
    return random_value(rng_, t, 0.0);
  }

  // A column of a kind that orders against `t` at runtime.
  std::optional<GenCol> comparable_col(tag::ValueType t) {
    std::vector<GenCol> pool;
    for (const auto& c : cols_) {
      bool ok = is_numeric_type(t) ? is_numeric_type(c.type) : c.type == t;
      if (ok) pool.push_back(c);
    }
    if (pool.empty()) return std::nullopt;
    return pick(rng_, pool);
  }

  sq::Expr leaf() {
    double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    if (roll < 0.2) {
      if (auto col = col_where([](tag::ValueType t) { return t == tag::ValueType::Text; })) {
        static const std::vector<std::string> patterns = {
            "%",  "%a%", "a%",  "%a", "_",    "____",
            "a_c", "%_",  "b%c", "",   "alpha"};
        sq::LikePred p{make_ref(*col), pick(rng_, patterns), chance(rng_, 0.3)};
        return sq::Expr{std::move(p)};
      }
      // No text column: fall through to a comparison.
    } else if (roll < 0.4) {
      const GenCol& col = any_col();
      sq::InPred p;
      p.lhs = make_ref(col);
      std::size_t n = static_cast<std::size_t>(rint(rng_, 1, 3));
      for (std::size_t i = 0; i < n; ++i) p.items.push_back(literal_for(col.type));
      if (chance(rng_, 0.15)) p.items.push_back(tag::Value());
      p.negated = chance(rng_, 0.3);
      return sq::Expr{std::move(p)};
    } else if (roll < 0.55) {
      const GenCol& col = any_col();
      sq::BetweenPred p;
      p.lhs = make_ref(col);
      p.low = chance(rng_, 0.1) ? tag::Value() : literal_for(col.type);
      p.high = chance(rng_, 0.1) ? tag::Value() : literal_for(col.type);
      p.negated = chance(rng_, 0.3);
      return sq::Expr{std::move(p)};
    }
    const GenCol& col = any_col();
    sq::Comparison c;
    c.lhs = make_ref(col);
    c.op = static_cast<sq::CmpOp>(rint(rng_, 0, 5));
    bool ordered = c.op != sq::CmpOp::eq && c.op != sq::CmpOp::ne;
    if (chance(rng_, 0.4)) {
      auto rhs = comparable_col(col.type);
      if (!ordered && chance(rng_, 0.15)) rhs = any_col();  // unequal kinds never match
      if (rhs) {
        c.rhs = make_ref(*rhs);
        return sq::Expr{std::move(c)};
      }
    }
    if (chance(rng_, 0.1)) {
      c.rhs = tag::Value();  // Null operand fails every comparison
    } else {
      c.rhs = literal_for(col.type);
    }
    return sq::Expr{std::move(c)};
  }

  sq::Expr expr(int depth, Compound parent) {
    double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    if (depth == 0 || roll < 0.5) return leaf();
    if (roll < 0.8) {
      // The parser flattens AND/OR chains, so never nest a compound directly
      // inside the same compound.
      bool use_and = parent == Compound::and_ ? false
                     : parent == Compound::or_ ? true
                                               : chance(rng_, 0.5);
      std::vector<sq::Expr> children;
      std::size_t n = static_cast<std::size_t>(rint(rng_, 2, 3));
      for (std::size_t i = 0; i < n; ++i) {
        children.push_back(expr(depth - 1, use_and ? Compound::and_ : Compound::or_));
      }
      if (use_and) return sq::Expr{sq::AndExpr{std::move(children)}};
      return sq::Expr{sq::OrExpr{std::move(children)}};
    }
    auto child = std::make_shared<sq::Expr>(expr(depth - 1, Compound::none));
    return sq::Expr{sq::NotExpr{std::move(child)}};
  }

  sq::Aggregate random_agg() {
    sq::Aggregate agg;
    agg.func = static_cast<sq::AggFunc>(rint(rng_, 0, 4));
    if (agg.func == sq::AggFunc::count && chance(rng_, 0.4)) {
      agg.star = true;
      return agg;
    }
    if (agg.func == sq::AggFunc::sum || agg.func == sq::AggFunc::avg) {
      auto col = col_where(is_numeric_type);
      if (!col) {
        agg.func = sq::AggFunc::count;
        agg.star = true;
        return agg;
      }
      agg.column = make_ref(*col);
    } else {
      agg.column = make_ref(any_col());
    }
    agg.distinct = chance(rng_, 0.25);
    return agg;
  }

  void build_grouped(sq::SqlAst& ast) {
    std::vector<GenCol> gcols;
    if (chance(rng_, 0.75)) {
      std::size_t n = static_cast<std::size_t>(rint(rng_, 1, 2));
      for (std::size_t i = 0; i < n && gcols.size() < cols_.size(); ++i) {
        const GenCol& c = any_col();
        bool dup = false;
        for (const auto& g : gcols) {
          if (g.table == c.table && g.name == c.name) dup = true;
        }
        if (!dup) gcols.push_back(c);
      }
      for (const auto& g : gcols) ast.group_by.push_back(make_ref(g));
    }
    for (const auto& g : gcols) {
      if (chance(rng_, 0.8)) ast.select.emplace_back(make_ref(g));
    }
    if (!gcols.empty() && chance(rng_, 0.15)) {
      ast.select.emplace_back(make_ref(pick(rng_, gcols)));
    }
    std::size_t aggs = static_cast<std::size_t>(rint(rng_, 1, 2));
    for (std::size_t i = 0; i < aggs; ++i) ast.select.emplace_back(random_agg());
    std::shuffle(ast.select.begin(), ast.select.end(), rng_);

    std::size_t order_n = static_cast<std::size_t>(rint(rng_, 0, 2));
    for (std::size_t i = 0; i < order_n; ++i) {
      sq::OrderItem item;
      if (!gcols.empty() && chance(rng_, 0.5)) {
        item.key = make_ref(pick(rng_, gcols));
      } else {
        item.key = random_agg();
      }
      item.descending = chance(rng_, 0.5);
      ast.order_by.push_back(std::move(item));
    }
  }

  void build_plain(sq::SqlAst& ast) {
    if (chance(rng_, 0.25)) {
      ast.select_star = true;
    } else {
      std::size_t n = static_cast<std::size_t>(rint(rng_, 1, 3));
      for (std::size_t i = 0; i < n; ++i) ast.select.emplace_back(make_ref(any_col()));
    }
    std::size_t order_n = static_cast<std::size_t>(rint(rng_, 0, 2));
    for (std::size_t i = 0; i < order_n; ++i) {
      sq::OrderItem item;
      item.key = make_ref(any_col());
      item.descending = chance(rng_, 0.5);
      ast.order_by.push_back(std::move(item));
    }
  }
};

}  // namespace testsup
