#include "tag/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tag/errors.hpp"

namespace tag {
namespace {

bool all_digits_or_sign(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

ValueType infer_column_type(const std::vector<std::vector<std::string>>& records,
                            std::size_t col) {
  bool any = false;
  bool all_int = true, all_float = true, all_bool = true;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const std::string& cell = records[r][col];
    if (cell.empty()) continue;
    any = true;
    if (all_int && !Value::try_parse(ValueType::Int, cell)) all_int = false;
    if (all_float && !Value::try_parse(ValueType::Float, cell)) all_float = false;
    if (all_bool && !Value::try_parse(ValueType::Bool, cell)) all_bool = false;
    if (!all_int && !all_float && !all_bool) break;
  }
  if (!any) return ValueType::Text;
  if (all_int) return ValueType::Int;
  if (all_float) return ValueType::Float;
  if (all_bool) return ValueType::Bool;
  return ValueType::Text;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field.push_back(c);
        ++i;
      }
    } else if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      i += 2;
    } else if (c == '\n' || c == '\r') {
      end_record();
      ++i;
    } else {
      field.push_back(c);
      field_started = true;
      ++i;
    }
  }
  if (in_quotes) throw SchemaError("unterminated quoted field");
  if (field_started || !record.empty() || !field.empty()) end_record();
  // Trailing blank lines are not records.
  while (!records.empty() && records.back().size() == 1 && records.back()[0].empty()) {
    records.pop_back();
  }
  return records;
}

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Table parse_csv(std::string_view text, const TypeHints& hints, std::string table_name) {
  auto records = parse_csv_records(text);
  if (records.empty()) throw SchemaError("csv has no header row");
  const auto& header = records[0];
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw SchemaError("row " + std::to_string(r) + " has " +
                        std::to_string(records[r].size()) + " fields, expected " +
                        std::to_string(header.size()));
    }
  }
  std::vector<Column> cols;
  cols.reserve(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    ValueType type;
    if (auto it = hints.find(header[c]); it != hints.end()) {
      type = it->second;
    } else {
      type = infer_column_type(records, c);
    }
    cols.push_back({header[c], type});
  }
  Table t(std::move(table_name), Schema(std::move(cols)));
  for (std::size_t r = 1; r < records.size(); ++r) {
    Row row;
    row.reserve(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      auto v = Value::try_parse(t.schema().at(c).type, records[r][c]);
      if (!v) {
        throw SchemaError("cell '" + records[r][c] + "' in column '" + header[c] +
                          "' does not parse as " +
                          std::string(to_string(t.schema().at(c).type)));
      }
      row.push_back(std::move(*v));
    }
    t.append_row(std::move(row));
  }
  return t;
}

Table load_csv(const std::filesystem::path& path, const TypeHints& hints,
               std::string table_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read csv file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (table_name.empty()) table_name = path.stem().string();
  return parse_csv(buf.str(), hints, std::move(table_name));
}

std::string dump_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.column_count(); ++c) {
    if (c) out.push_back(',');
    out += csv_escape(t.schema().at(c).name);
  }
  out.push_back('\n');
  for (const auto& row : t.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      std::string cell = row[c].render();
      if (row[c].type() == ValueType::Float && all_digits_or_sign(cell)) cell += ".0";
      out += csv_escape(cell);
    }
    out.push_back('\n');
  }
  return out;
}

TableCatalog load_catalog(const std::filesystem::path& data_dir, const std::string& domain,
                          const CatalogHints& hints) {
  std::filesystem::path dir = data_dir / domain;
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("domain directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  TableCatalog catalog(domain);
  for (const auto& f : files) {
    std::string name = f.stem().string();
    TypeHints th;
    if (auto it = hints.find(name); it != hints.end()) th = it->second;
    catalog.add_table(load_csv(f, th, name));
  }
  return catalog;
}

}  // namespace tag
