#include "tag/serialize.hpp"

#include "tag/errors.hpp"

namespace tag {

std::string serialize_row(const Table& t, std::size_t row_index,
                          const std::optional<std::vector<std::string>>& columns) {
  if (row_index >= t.row_count()) {
    throw IndexOutOfRange("row " + std::to_string(row_index) + " out of range for table '" +
                          t.name() + "' with " + std::to_string(t.row_count()) + " rows");
  }
  std::vector<std::size_t> indices;
  if (columns) {
    indices.reserve(columns->size());
    for (const auto& name : *columns) indices.push_back(t.schema().require(name));
  } else {
    indices.resize(t.column_count());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  }
  std::string out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) out.push_back('\n');
    std::size_t c = indices[k];
    out += "- ";
    out += t.schema().at(c).name;
    out += ": ";
    out += t.cell(row_index, c).render();
  }
  return out;
}

std::string serialize_table(const Table& t, std::optional<std::size_t> max_rows,
                            const std::optional<std::vector<std::string>>& columns) {
  std::size_t n = t.row_count();
  if (max_rows && *max_rows < n) n = *max_rows;
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += "\n\n";
    out += "Data Point " + std::to_string(i + 1) + ":\n";
    out += serialize_row(t, i, columns);
  }
  return out;
}

}  // namespace tag
