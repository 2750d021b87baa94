#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tag {

enum class ValueType { Null, Bool, Int, Float, Text };

std::string_view to_string(ValueType type);
std::optional<ValueType> parse_value_type(std::string_view name);

// One table cell. Int and Float compare numerically against each other; all
// other comparisons stay within a single variant.
class Value {
 public:
  Value() = default;
  Value(bool v) : storage_(v) {}
  Value(std::int64_t v) : storage_(v) {}
  Value(int v) : storage_(static_cast<std::int64_t>(v)) {}
  Value(double v) : storage_(v) {}
  Value(std::string v) : storage_(std::move(v)) {}
  Value(std::string_view v) : storage_(std::string(v)) {}
  Value(const char* v) : storage_(std::string(v)) {}

  ValueType type() const;
  bool is_null() const { return storage_.index() == 0; }
  bool is_numeric() const;

  bool as_bool() const;
  std::int64_t as_int() const;
  double as_float() const;
  const std::string& as_text() const;
  // Int or Float widened to double.
  double numeric() const;

  // Text form used in prompts and CSV output. Null renders as "".
  std::string render() const;

  // Inverse of render for a known column type; empty text yields Null.
  // Returns nullopt when the text does not parse as the requested type.
  static std::optional<Value> try_parse(ValueType type, std::string_view text);

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  std::variant<std::monostate, bool, std::int64_t, double, std::string> storage_;
};

// Predicate semantics: Null fails every comparison, including Null = Null.
bool predicate_equals(const Value& a, const Value& b);

// -1/0/1 for comparable pairs; nullopt when either side is Null or the
// variants cannot be ordered against each other.
std::optional<int> compare_values(const Value& a, const Value& b);

// Total order used for sorting: Null < Bool < numeric < Text.
int total_order(const Value& a, const Value& b);

// SQL LIKE: % matches any run, _ matches one byte; case-sensitive.
bool like_match(std::string_view text, std::string_view pattern);

// Shortest decimal form that round-trips through double.
std::string render_double(double v);

}  // namespace tag
