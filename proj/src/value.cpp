#include "tag/value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "tag/errors.hpp"

namespace tag {
namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::Null: return "null";
    case ValueType::Bool: return "bool";
    case ValueType::Int: return "int";
    case ValueType::Float: return "float";
    case ValueType::Text: return "text";
  }
  return "?";
}

std::optional<ValueType> parse_value_type(std::string_view name) {
  std::string n = lower_ascii(name);
  if (n == "null") return ValueType::Null;
  if (n == "bool") return ValueType::Bool;
  if (n == "int") return ValueType::Int;
  if (n == "float") return ValueType::Float;
  if (n == "text") return ValueType::Text;
  return std::nullopt;
}

ValueType Value::type() const {
  switch (storage_.index()) {
    case 0: return ValueType::Null;
    case 1: return ValueType::Bool;
    case 2: return ValueType::Int;
    case 3: return ValueType::Float;
    default: return ValueType::Text;
  }
}

bool Value::is_numeric() const {
  return storage_.index() == 2 || storage_.index() == 3;
}

bool Value::as_bool() const {
  if (auto* p = std::get_if<bool>(&storage_)) return *p;
  throw TypeError("value is not bool");
}

std::int64_t Value::as_int() const {
  if (auto* p = std::get_if<std::int64_t>(&storage_)) return *p;
  throw TypeError("value is not int");
}

double Value::as_float() const {
  if (auto* p = std::get_if<double>(&storage_)) return *p;
  throw TypeError("value is not float");
}

const std::string& Value::as_text() const {
  if (auto* p = std::get_if<std::string>(&storage_)) return *p;
  throw TypeError("value is not text");
}

double Value::numeric() const {
  if (auto* p = std::get_if<std::int64_t>(&storage_)) return static_cast<double>(*p);
  if (auto* p = std::get_if<double>(&storage_)) return *p;
  throw TypeError("value is not numeric");
}

std::string render_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

std::string Value::render() const {
  switch (storage_.index()) {
    case 0: return "";
    case 1: return std::get<bool>(storage_) ? "true" : "false";
    case 2: return std::to_string(std::get<std::int64_t>(storage_));
    case 3: return render_double(std::get<double>(storage_));
    default: return std::get<std::string>(storage_);
  }
}

std::optional<Value> Value::try_parse(ValueType type, std::string_view text) {
  if (text.empty()) return Value();
  switch (type) {
    case ValueType::Null:
      return std::nullopt;  // only "" maps to Null, handled above
    case ValueType::Bool: {
      std::string low = lower_ascii(text);
      if (low == "true") return Value(true);
      if (low == "false") return Value(false);
      return std::nullopt;
    }
    case ValueType::Int: {
      std::int64_t out = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
      if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
      return Value(out);
    }
    case ValueType::Float: {
      double out = 0.0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
      if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
      return Value(out);
    }
    case ValueType::Text:
      return Value(std::string(text));
  }
  return std::nullopt;
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_null() && b.is_null()) return true;
  if (a.is_null() || b.is_null()) return false;
  if (a.is_numeric() && b.is_numeric()) return a.numeric() == b.numeric();
  if (a.storage_.index() != b.storage_.index()) return false;
  return a.storage_ == b.storage_;
}

bool predicate_equals(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return false;
  return a == b;
}

std::optional<int> compare_values(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return std::nullopt;
  if (a.is_numeric() && b.is_numeric()) {
    double x = a.numeric(), y = b.numeric();
    if (x < y) return -1;
    if (x > y) return 1;
    return 0;
  }
  if (a.type() != b.type()) return std::nullopt;
  switch (a.type()) {
    case ValueType::Bool: {
      int x = a.as_bool() ? 1 : 0, y = b.as_bool() ? 1 : 0;
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case ValueType::Text: {
      int c = a.as_text().compare(b.as_text());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    default:
      return std::nullopt;
  }
}

int total_order(const Value& a, const Value& b) {
  auto rank = [](const Value& v) {
    switch (v.type()) {
      case ValueType::Null: return 0;
      case ValueType::Bool: return 1;
      case ValueType::Int:
      case ValueType::Float: return 2;
      case ValueType::Text: return 3;
    }
    return 4;
  };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra == 0) return 0;
  return compare_values(a, b).value_or(0);
}

bool like_match(std::string_view s, std::string_view p) {
  std::size_t si = 0, pi = 0;
  std::size_t star_p = std::string_view::npos, star_s = 0;
  while (si < s.size()) {
    if (pi < p.size() && (p[pi] == '_' || p[pi] == s[si])) {
      ++si;
      ++pi;
    } else if (pi < p.size() && p[pi] == '%') {
      star_p = pi++;
      star_s = si;
    } else if (star_p != std::string_view::npos) {
      pi = star_p + 1;
      si = ++star_s;
    } else {
      return false;
    }
  }
  while (pi < p.size() && p[pi] == '%') ++pi;
  return pi == p.size();
}

}  // namespace tag
