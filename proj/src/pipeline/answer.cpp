#include "tag/pipeline/answer.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>

#include "tag/errors.hpp"

namespace tag::pipeline {
namespace {

std::string quote_text(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += c;
    }
  }
  out += "\"";
  return out;
}

std::string render_list_item(const Value& v) {
  switch (v.type()) {
    case ValueType::Null:
      return "null";
    case ValueType::Bool:
      return v.as_bool() ? "true" : "false";
    case ValueType::Int:
      return std::to_string(v.as_int());
    case ValueType::Float: {
      std::string s = render_double(v.as_float());
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      return s;
    }
    case ValueType::Text:
      return quote_text(v.as_text());
  }
  return "null";
}

// Cursor over one balanced bracket span.
class ListParser {
 public:
  ListParser(std::string_view text, std::size_t begin, std::size_t end)
      : text_(text), pos_(begin), end_(end) {}

  std::vector<Value> parse() {
    std::vector<Value> items;
    skip_ws();
    expect('[');
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return items;
    }
    while (true) {
      items.push_back(parse_item());
      skip_ws();
      char c = peek();
      if (c == ',') {
        ++pos_;
        skip_ws();
        continue;
      }
      if (c == ']') {
        ++pos_;
        return items;
      }
      fail("expected ',' or ']' in answer list");
    }
  }

 private:
  char peek() const { return pos_ < end_ ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < end_ && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw AnswerParseError(why + " at offset " + std::to_string(pos_));
  }

  Value parse_item() {
    char c = peek();
    if (c == '"') return parse_string();
    if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_atom();
    fail("expected a value in answer list");
  }

  Value parse_string() {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < end_) {
      char c = text_[pos_++];
      if (c == '"') return Value(std::move(out));
      if (c == '\\') {
        if (pos_ >= end_) break;
        char e = text_[pos_++];
        switch (e) {
          case 'n':
            out += '\n';
            break;
          case 't':
            out += '\t';
            break;
          case 'r':
            out += '\r';
            break;
          default:
            out += e;  // \" and \\ land here; unknown escapes drop the backslash
        }
        continue;
      }
      out += c;
    }
    fail("unterminated string in answer list");
  }

  Value parse_number() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    bool digits = false, dot = false, exponent = false;
    while (pos_ < end_) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        ++pos_;
      } else if (c == '.' && !dot && !exponent) {
        dot = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && digits && !exponent) {
        exponent = true;
        ++pos_;
        if (pos_ < end_ && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      } else {
        break;
      }
    }
    std::string_view token = text_.substr(start, pos_ - start);
    if (!digits) fail("malformed number in answer list");
    if (!dot && !exponent) {
      std::int64_t n = 0;
      std::string_view digits_only = token;
      if (!digits_only.empty() && digits_only[0] == '+') digits_only.remove_prefix(1);
      auto [p, ec] = std::from_chars(digits_only.data(), digits_only.data() + digits_only.size(), n);
      if (ec == std::errc() && p == digits_only.data() + digits_only.size()) return Value(n);
    }
    double d = 0.0;
    std::string buf(token);
    try {
      d = std::stod(buf);
    } catch (const std::exception&) {
      fail("malformed number in answer list");
    }
    return Value(d);
  }

  Value parse_atom() {
    std::size_t start = pos_;
    while (pos_ < end_ && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (word == "true") return Value(true);
    if (word == "false") return Value(false);
    if (word == "null" || word == "none") return Value();
    pos_ = start;
    fail("unknown atom '" + word + "' in answer list");
  }

  std::string_view text_;
  std::size_t pos_;
  std::size_t end_;
};

}  // namespace

Answer Answer::list(std::vector<Value> values) {
  Answer a;
  a.kind = AnswerKind::value_list;
  a.values = std::move(values);
  return a;
}

Answer Answer::freeform(std::string text) {
  Answer a;
  a.kind = AnswerKind::free_text;
  a.text = std::move(text);
  return a;
}

std::string Answer::render() const {
  if (kind == AnswerKind::free_text) return text;
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += render_list_item(values[i]);
  }
  out += "]";
  return out;
}

std::vector<Value> parse_answer_list(const std::string& text) {
  // Locate the first balanced bracket span, skipping brackets inside
  // double-quoted strings so prose like ["a[0]"] survives.
  std::size_t begin = std::string::npos;
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"' && depth > 0) {
      in_string = true;
    } else if (c == '[') {
      if (depth == 0) begin = i;
      ++depth;
    } else if (c == ']') {
      if (depth > 0 && --depth == 0) {
        return ListParser(text, begin, i + 1).parse();
      }
    }
  }
  throw AnswerParseError("no bracketed list in response");
}

}  // namespace tag::pipeline
