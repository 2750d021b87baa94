#pragma once

#include <string>
#include <vector>

#include "tag/table.hpp"

namespace tag::sem {

// Raw text with {column} placeholders. Placeholders are replaced with the
// rendered cell value of the row being instantiated; a brace without a
// matching close stays literal.
class PromptTemplate {
 public:
  explicit PromptTemplate(std::string raw);

  const std::string& raw() const { return raw_; }
  // First-appearance order, deduplicated.
  const std::vector<std::string>& referenced_columns() const { return referenced_; }

  std::string instantiate(const Table& t, std::size_t row) const;

 private:
  std::string raw_;
  std::vector<std::string> referenced_;
};

}  // namespace tag::sem
