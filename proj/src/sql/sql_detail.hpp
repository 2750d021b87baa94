#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <string_view>

namespace tag::sql::detail {

inline std::string upper_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

// Keywords of the supported subset plus recognized-but-unsupported ones.
inline constexpr std::array<std::string_view, 42> kKeywords = {
    "SELECT", "FROM",  "WHERE",   "AND",    "OR",      "NOT",    "LIKE",  "IN",
    "BETWEEN", "GROUP", "BY",      "ORDER",  "ASC",     "DESC",   "LIMIT", "JOIN",
    "INNER",  "ON",    "COUNT",   "SUM",    "AVG",     "MIN",    "MAX",   "DISTINCT",
    "TRUE",   "FALSE", "NULL",    "AS",     "HAVING",  "UNION",  "LEFT",  "RIGHT",
    "FULL",   "OUTER", "CROSS",   "OFFSET", "EXISTS",  "IS",     "OVER",  "INTERSECT",
    "EXCEPT", "CASE",
};

inline bool is_keyword(std::string_view upper) {
  return std::find(kKeywords.begin(), kKeywords.end(), upper) != kKeywords.end();
}

inline bool is_bare_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](unsigned char c) { return std::isalpha(c) || c == '_'; };
  auto tail = [](unsigned char c) { return std::isalnum(c) || c == '_'; };
  if (!head(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!tail(static_cast<unsigned char>(s[i]))) return false;
  }
  return !is_keyword(upper_ascii(s));
}

}  // namespace tag::sql::detail
