#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tag/value.hpp"

namespace tag {

struct Column {
  std::string name;
  ValueType type = ValueType::Text;

  bool operator==(const Column&) const = default;
};

// Ordered list of uniquely named, typed columns.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<Column> columns);  // throws SchemaError on duplicates

  const std::vector<Column>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }
  const Column& at(std::size_t i) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;  // throws UnknownColumn

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Column> columns_;
};

using Row = std::vector<Value>;

// Columnar-typed, row-stored relation. Every cell matches its column type or
// is Null.
class Table {
 public:
  Table() = default;
  Table(std::string name, Schema schema);
  Table(std::string name, Schema schema, std::vector<Row> rows);

  const std::string& name() const { return name_; }
  const Schema& schema() const { return schema_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return schema_.size(); }

  const Value& cell(std::size_t row, std::size_t col) const;
  const Row& row(std::size_t i) const;

  void append_row(Row row);  // validates arity and cell types

  bool operator==(const Table&) const = default;

 private:
  std::string name_;
  Schema schema_;
  std::vector<Row> rows_;
};

// New table with the requested columns in the requested order.
Table project(const Table& t, const std::vector<std::string>& columns);

// Named tables of one domain; iteration order is sorted by table name.
class TableCatalog {
 public:
  TableCatalog() = default;
  explicit TableCatalog(std::string domain) : domain_(std::move(domain)) {}

  const std::string& domain_name() const { return domain_; }
  const std::map<std::string, Table>& tables() const { return tables_; }

  void add_table(Table t);                       // throws SchemaError on duplicate name
  bool contains(std::string_view name) const;
  const Table& at(std::string_view name) const;  // throws UnknownTable

 private:
  std::string domain_;
  std::map<std::string, Table> tables_;
};

}  // namespace tag
