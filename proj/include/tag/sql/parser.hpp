#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tag/errors.hpp"
#include "tag/sql/ast.hpp"

namespace tag::sql {

// Malformed input: carries the byte offset where parsing stopped and the
// token kinds that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Recognized SQL that is outside the supported subset (subqueries, HAVING,
// window functions, outer joins, ...). Deliberately distinct from ParseError.
class UnsupportedSyntax : public Error {
 public:
  UnsupportedSyntax(std::string construct, std::size_t offset);

  const std::string& construct() const { return construct_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string construct_;
  std::size_t offset_;
};

// Name-resolution or aggregate-placement failure detected before execution.
class SemanticError : public Error {
 public:
  using Error::Error;
};

SqlAst parse_sql(std::string_view text);

}  // namespace tag::sql
