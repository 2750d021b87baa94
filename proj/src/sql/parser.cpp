#include "tag/sql/parser.hpp"

#include <cctype>
#include <charconv>

#include "sql_detail.hpp"

namespace tag::sql {

ParseError::ParseError(std::string message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

UnsupportedSyntax::UnsupportedSyntax(std::string construct, std::size_t offset)
    : Error("unsupported syntax: " + construct), construct_(std::move(construct)),
      offset_(offset) {}

namespace {

enum class TokKind { identifier, keyword, number, string, symbol, end };

struct Token {
  TokKind kind;
  std::string text;   // keyword: upper-cased; identifier: unquoted form
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) {
        out.push_back({TokKind::end, "", pos_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Token next() {
    std::size_t start = pos_;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string word(text_.substr(start, pos_ - start));
      std::string upper = detail::upper_ascii(word);
      if (detail::is_keyword(upper)) return {TokKind::keyword, upper, start};
      return {TokKind::identifier, word, start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t mark = pos_;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
          pos_ = mark;  // "1e" is a number followed by an identifier
        }
      }
      return {TokKind::number, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (c == '\'') {
      std::string val;
      ++pos_;
      while (pos_ < text_.size()) {
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            val.push_back('\'');
            pos_ += 2;
          } else {
            ++pos_;
            return {TokKind::string, std::move(val), start};
          }
        } else {
          val.push_back(text_[pos_++]);
        }
      }
      throw ParseError("unterminated string literal", start, {"'"});
    }
    if (c == '"' || c == '`') {
      char close = c;
      std::string val;
      ++pos_;
      while (pos_ < text_.size()) {
        if (text_[pos_] == close) {
          if (close == '"' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
            val.push_back('"');
            pos_ += 2;
          } else {
            ++pos_;
            return {TokKind::identifier, std::move(val), start};
          }
        } else {
          val.push_back(text_[pos_++]);
        }
      }
      throw ParseError("unterminated quoted identifier", start, {std::string(1, close)});
    }
    static constexpr std::string_view kTwoChar[] = {"<=", ">=", "!=", "<>", "=="};
    for (auto two : kTwoChar) {
      if (text_.substr(pos_, 2) == two) {
        pos_ += 2;
        return {TokKind::symbol, std::string(two), start};
      }
    }
    static constexpr std::string_view kOneChar = ",().*=<>;+-/%|";
    if (kOneChar.find(c) != std::string_view::npos) {
      ++pos_;
      return {TokKind::symbol, std::string(1, c), start};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start, {});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  SqlAst parse() {
    SqlAst ast;
    expect_keyword("SELECT");
    if (at_keyword("DISTINCT")) throw UnsupportedSyntax("SELECT DISTINCT", peek().offset);
    parse_select_list(ast);
    expect_keyword("FROM");
    ast.from_table = parse_table_name();
    while (true) {
      if (at_keyword("INNER")) {
        advance();
        expect_keyword("JOIN");
      } else if (at_keyword("JOIN")) {
        advance();
      } else if (at_keyword("LEFT") || at_keyword("RIGHT") || at_keyword("FULL") ||
                 at_keyword("OUTER") || at_keyword("CROSS")) {
        throw UnsupportedSyntax(peek().text + " join", peek().offset);
      } else if (at_symbol(",")) {
        throw UnsupportedSyntax("comma join", peek().offset);
      } else {
        break;
      }
      Join j;
      j.table = parse_table_name();
      expect_keyword("ON");
      j.left = parse_column_ref();
      expect_symbol_oneof({"=", "=="});
      j.right = parse_column_ref();
      ast.joins.push_back(std::move(j));
    }
    if (at_keyword("WHERE")) {
      advance();
      ast.where = parse_or_expr();
    }
    if (at_keyword("GROUP")) {
      advance();
      expect_keyword("BY");
      ast.group_by.push_back(parse_column_ref());
      while (at_symbol(",")) {
        advance();
        ast.group_by.push_back(parse_column_ref());
      }
      if (at_keyword("HAVING")) throw UnsupportedSyntax("HAVING", peek().offset);
    }
    if (at_keyword("ORDER")) {
      advance();
      expect_keyword("BY");
      ast.order_by.push_back(parse_order_item());
      while (at_symbol(",")) {
        advance();
        ast.order_by.push_back(parse_order_item());
      }
    }
    if (at_keyword("LIMIT")) {
      advance();
      const Token& t = peek();
      if (t.kind != TokKind::number) {
        throw ParseError("expected integer after LIMIT", t.offset, {"integer"});
      }
      std::int64_t n = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
      if (ec != std::errc() || p != t.text.data() + t.text.size()) {
        throw ParseError("LIMIT must be a non-negative integer", t.offset, {"integer"});
      }
      advance();
      if (at_keyword("OFFSET")) throw UnsupportedSyntax("OFFSET", peek().offset);
      ast.limit = n;
    }
    for (const char* set_op : {"UNION", "INTERSECT", "EXCEPT"}) {
      if (at_keyword(set_op)) throw UnsupportedSyntax(set_op, peek().offset);
    }
    if (at_symbol(";")) advance();
    if (peek().kind != TokKind::end) {
      throw ParseError("trailing input after statement", peek().offset, {"end of input"});
    }
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i >= tokens_.size()) i = tokens_.size() - 1;
    return tokens_[i];
  }

  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == TokKind::keyword && peek().text == kw;
  }

  bool at_symbol(std::string_view s) const {
    return peek().kind == TokKind::symbol && peek().text == s;
  }

  void expect_keyword(const std::string& kw) {
    if (!at_keyword(kw)) {
      throw ParseError("expected " + kw, peek().offset, {kw});
    }
    advance();
  }

  void expect_symbol(const std::string& s) {
    if (!at_symbol(s)) {
      throw ParseError("expected '" + s + "'", peek().offset, {s});
    }
    advance();
  }

  void expect_symbol_oneof(std::vector<std::string> options) {
    for (const auto& s : options) {
      if (at_symbol(s)) {
        advance();
        return;
      }
    }
    throw ParseError("expected one of the listed tokens", peek().offset, std::move(options));
  }

  std::string parse_identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != TokKind::identifier) {
      throw ParseError(std::string("expected ") + what, t.offset, {what});
    }
    std::string out = t.text;
    advance();
    return out;
  }

  std::string parse_table_name() {
    if (at_symbol("(")) throw UnsupportedSyntax("subquery", peek().offset);
    std::string name = parse_identifier("table name");
    if (at_keyword("AS") || peek().kind == TokKind::identifier) {
      throw UnsupportedSyntax("table alias", peek().offset);
    }
    return name;
  }

  ColumnRef parse_column_ref() {
    ColumnRef ref;
    ref.name = parse_identifier("column name");
    if (at_symbol(".")) {
      advance();
      ref.table = std::move(ref.name);
      ref.name = parse_identifier("column name");
    }
    return ref;
  }

  static std::optional<AggFunc> agg_from_keyword(const std::string& kw) {
    if (kw == "COUNT") return AggFunc::count;
    if (kw == "SUM") return AggFunc::sum;
    if (kw == "AVG") return AggFunc::avg;
    if (kw == "MIN") return AggFunc::min;
    if (kw == "MAX") return AggFunc::max;
    return std::nullopt;
  }

  bool at_aggregate() const {
    return peek().kind == TokKind::keyword && agg_from_keyword(peek().text) &&
           peek(1).kind == TokKind::symbol && peek(1).text == "(";
  }

  OrderItem parse_order_item() {
    OrderItem item;
    if (at_aggregate()) {
      item.key = parse_aggregate();
    } else {
      item.key = parse_column_ref();
    }
    if (at_keyword("ASC")) {
      advance();
    } else if (at_keyword("DESC")) {
      item.descending = true;
      advance();
    }
    return item;
  }

  Aggregate parse_aggregate() {
    Aggregate agg;
    agg.func = *agg_from_keyword(peek().text);
    advance();
    expect_symbol("(");
    if (at_symbol("*")) {
      if (agg.func != AggFunc::count) {
        throw ParseError("'*' is only valid in COUNT", peek().offset, {"column name"});
      }
      agg.star = true;
      advance();
    } else {
      if (at_keyword("DISTINCT")) {
        agg.distinct = true;
        advance();
      }
      agg.column = parse_column_ref();
    }
    expect_symbol(")");
    if (at_keyword("OVER")) throw UnsupportedSyntax("window function", peek().offset);
    return agg;
  }

  void parse_select_list(SqlAst& ast) {
    if (at_symbol("*")) {
      ast.select_star = true;
      advance();
      if (at_symbol(",")) {
        throw UnsupportedSyntax("mixing * with other select items", peek().offset);
      }
      return;
    }
    ast.select.push_back(parse_select_item());
    while (at_symbol(",")) {
      advance();
      ast.select.push_back(parse_select_item());
    }
  }

  SelectItem parse_select_item() {
    SelectItem item = [&]() -> SelectItem {
      if (at_aggregate()) return parse_aggregate();
      if (peek().kind == TokKind::identifier && peek(1).kind == TokKind::symbol &&
          peek(1).text == "(") {
        throw UnsupportedSyntax("function call: " + peek().text, peek().offset);
      }
      if (peek().kind == TokKind::keyword && peek(1).kind == TokKind::symbol &&
          peek(1).text == "(") {
        throw UnsupportedSyntax("function call: " + peek().text, peek().offset);
      }
      if (peek().kind != TokKind::identifier) {
        throw ParseError("expected select item", peek().offset,
                         {"column name", "aggregate", "*"});
      }
      return parse_column_ref();
    }();
    if (at_keyword("AS") || peek().kind == TokKind::identifier) {
      throw UnsupportedSyntax("select alias", peek().offset);
    }
    return item;
  }

  Value parse_literal() {
    const Token& t = peek();
    if (t.kind == TokKind::string) {
      Value v(t.text);
      advance();
      return v;
    }
    if (t.kind == TokKind::keyword) {
      if (t.text == "TRUE") { advance(); return Value(true); }
      if (t.text == "FALSE") { advance(); return Value(false); }
      if (t.text == "NULL") { advance(); return Value(); }
    }
    bool negative = false;
    if (at_symbol("-") || at_symbol("+")) {
      negative = peek().text == "-";
      advance();
    }
    const Token& num = peek();
    if (num.kind != TokKind::number) {
      throw ParseError("expected literal", num.offset, {"number", "string", "TRUE", "FALSE", "NULL"});
    }
    Value v = number_value(num.text, negative);
    advance();
    return v;
  }

  static Value number_value(const std::string& text, bool negative) {
    bool floaty = text.find_first_of(".eE") != std::string::npos;
    if (!floaty) {
      std::int64_t n = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec == std::errc() && p == text.data() + text.size()) {
        return Value(negative ? -n : n);
      }
      // Falls through to double on overflow.
    }
    double d = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (ec != std::errc() || p != text.data() + text.size()) {
      throw ParseError("malformed number: " + text, 0, {"number"});
    }
    return Value(negative ? -d : d);
  }

  Expr parse_or_expr() {
    std::vector<Expr> children;
    children.push_back(parse_and_expr());
    while (at_keyword("OR")) {
      advance();
      children.push_back(parse_and_expr());
    }
    if (children.size() == 1) return std::move(children[0]);
    return Expr{OrExpr{std::move(children)}};
  }

  Expr parse_and_expr() {
    std::vector<Expr> children;
    children.push_back(parse_not_expr());
    while (at_keyword("AND")) {
      advance();
      children.push_back(parse_not_expr());
    }
    if (children.size() == 1) return std::move(children[0]);
    return Expr{AndExpr{std::move(children)}};
  }

  Expr parse_not_expr() {
    if (at_keyword("NOT")) {
      advance();
      Expr child = parse_not_expr();
      return Expr{NotExpr{std::make_shared<const Expr>(std::move(child))}};
    }
    return parse_primary();
  }

  Expr parse_primary() {
    if (at_symbol("(")) {
      if (peek(1).kind == TokKind::keyword && peek(1).text == "SELECT") {
        throw UnsupportedSyntax("subquery", peek(1).offset);
      }
      advance();
      Expr inner = parse_or_expr();
      expect_symbol(")");
      return inner;
    }
    if (at_keyword("EXISTS")) throw UnsupportedSyntax("EXISTS", peek().offset);
    return parse_predicate();
  }

  Operand parse_operand() {
    const Token& t = peek();
    if (t.kind == TokKind::identifier) {
      if (peek(1).kind == TokKind::symbol && peek(1).text == "(") {
        throw UnsupportedSyntax("function call: " + t.text, t.offset);
      }
      return parse_column_ref();
    }
    if (at_aggregate()) {
      throw UnsupportedSyntax("aggregate in WHERE", t.offset);
    }
    if (at_keyword("CASE")) throw UnsupportedSyntax("CASE", t.offset);
    return parse_literal();
  }

  Expr parse_predicate() {
    Operand lhs = parse_operand();
    if (at_symbol("+") || at_symbol("-") || at_symbol("/") || at_symbol("%") ||
        at_symbol("*") || at_symbol("|")) {
      throw UnsupportedSyntax("arithmetic expression", peek().offset);
    }
    if (at_keyword("IS")) throw UnsupportedSyntax("IS", peek().offset);
    bool negated = false;
    if (at_keyword("NOT")) {
      negated = true;
      advance();
      if (!at_keyword("LIKE") && !at_keyword("IN") && !at_keyword("BETWEEN")) {
        throw ParseError("expected LIKE, IN or BETWEEN after NOT", peek().offset,
                         {"LIKE", "IN", "BETWEEN"});
      }
    }
    if (at_keyword("LIKE")) {
      advance();
      const Token& t = peek();
      if (t.kind != TokKind::string) {
        throw ParseError("LIKE pattern must be a string literal", t.offset, {"string"});
      }
      LikePred p{std::move(lhs), t.text, negated};
      advance();
      return Expr{std::move(p)};
    }
    if (at_keyword("IN")) {
      advance();
      expect_symbol("(");
      if (at_keyword("SELECT")) throw UnsupportedSyntax("subquery", peek().offset);
      InPred p;
      p.lhs = std::move(lhs);
      p.negated = negated;
      p.items.push_back(parse_literal());
      while (at_symbol(",")) {
        advance();
        p.items.push_back(parse_literal());
      }
      expect_symbol(")");
      return Expr{std::move(p)};
    }
    if (at_keyword("BETWEEN")) {
      advance();
      BetweenPred p;
      p.lhs = std::move(lhs);
      p.negated = negated;
      p.low = parse_literal();
      expect_keyword("AND");
      p.high = parse_literal();
      return Expr{std::move(p)};
    }
    Comparison cmp;
    cmp.lhs = std::move(lhs);
    const Token& t = peek();
    if (t.kind != TokKind::symbol) {
      throw ParseError("expected comparison operator", t.offset,
                       {"=", "!=", "<", "<=", ">", ">=", "LIKE", "IN", "BETWEEN"});
    }
    if (t.text == "=" || t.text == "==") cmp.op = CmpOp::eq;
    else if (t.text == "!=" || t.text == "<>") cmp.op = CmpOp::ne;
    else if (t.text == "<") cmp.op = CmpOp::lt;
    else if (t.text == "<=") cmp.op = CmpOp::le;
    else if (t.text == ">") cmp.op = CmpOp::gt;
    else if (t.text == ">=") cmp.op = CmpOp::ge;
    else {
      throw ParseError("expected comparison operator", t.offset,
                       {"=", "!=", "<", "<=", ">", ">=", "LIKE", "IN", "BETWEEN"});
    }
    advance();
    cmp.rhs = parse_operand();
    return Expr{std::move(cmp)};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SqlAst parse_sql(std::string_view text) {
  return Parser(text).parse();
}

}  // namespace tag::sql
