#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tag/table.hpp"

namespace tag {

// One line per column: "- {name}: {rendered value}". Null renders as the
// empty string, so the line ends after the colon-space. Column subset and
// order can be overridden.
std::string serialize_row(const Table& t, std::size_t row_index,
                          const std::optional<std::vector<std::string>>& columns = std::nullopt);

// "Data Point {i+1}:" blocks separated by one blank line; empty table yields
// the empty string. max_rows truncates.
std::string serialize_table(const Table& t, std::optional<std::size_t> max_rows = std::nullopt,
                            const std::optional<std::vector<std::string>>& columns = std::nullopt);

}  // namespace tag
