#include "tag/table.hpp"

#include <unordered_set>

#include "tag/errors.hpp"

namespace tag {

Schema::Schema(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name).second) {
      throw SchemaError("duplicate column name: " + c.name);
    }
  }
}

const Column& Schema::at(std::size_t i) const {
  if (i >= columns_.size()) throw IndexOutOfRange("column index out of range");
  return columns_[i];
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Schema::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw UnknownColumn("unknown column: " + std::string(name));
}

Table::Table(std::string name, Schema schema)
    : name_(std::move(name)), schema_(std::move(schema)) {}

Table::Table(std::string name, Schema schema, std::vector<Row> rows)
    : name_(std::move(name)), schema_(std::move(schema)) {
  rows_.reserve(rows.size());
  for (auto& r : rows) append_row(std::move(r));
}

const Value& Table::cell(std::size_t row, std::size_t col) const {
  if (row >= rows_.size()) throw IndexOutOfRange("row index out of range");
  if (col >= schema_.size()) throw IndexOutOfRange("column index out of range");
  return rows_[row][col];
}

const Row& Table::row(std::size_t i) const {
  if (i >= rows_.size()) throw IndexOutOfRange("row index out of range");
  return rows_[i];
}

void Table::append_row(Row row) {
  if (row.size() != schema_.size()) {
    throw SchemaError("row has " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(schema_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_null() && row[i].type() != schema_.at(i).type) {
      throw TypeError("cell type " + std::string(to_string(row[i].type())) +
                      " does not match column '" + schema_.at(i).name + "' of type " +
                      std::string(to_string(schema_.at(i).type)));
    }
  }
  rows_.push_back(std::move(row));
}

Table project(const Table& t, const std::vector<std::string>& columns) {
  std::vector<std::size_t> indices;
  std::vector<Column> cols;
  indices.reserve(columns.size());
  for (const auto& name : columns) {
    std::size_t i = t.schema().require(name);
    indices.push_back(i);
    cols.push_back(t.schema().at(i));
  }
  Table out(t.name(), Schema(std::move(cols)));
  for (const auto& r : t.rows()) {
    Row nr;
    nr.reserve(indices.size());
    for (std::size_t i : indices) nr.push_back(r[i]);
    out.append_row(std::move(nr));
  }
  return out;
}

void TableCatalog::add_table(Table t) {
  if (tables_.contains(t.name())) {
    throw SchemaError("duplicate table name: " + t.name());
  }
  tables_.emplace(t.name(), std::move(t));
}

bool TableCatalog::contains(std::string_view name) const {
  return tables_.find(std::string(name)) != tables_.end();
}

const Table& TableCatalog::at(std::string_view name) const {
  auto it = tables_.find(std::string(name));
  if (it == tables_.end()) throw UnknownTable("unknown table: " + std::string(name));
  return it->second;
}

}  // namespace tag
