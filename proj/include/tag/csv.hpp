#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "tag/table.hpp"

namespace tag {

// Per-column type overrides for one table, and per-table overrides for a
// whole catalog. Hinted columns skip inference; a cell that fails to parse
// as the hinted type is a SchemaError.
using TypeHints = std::map<std::string, ValueType>;
using CatalogHints = std::map<std::string, TypeHints>;

// RFC 4180 CSV with a mandatory header row. Empty cells load as Null.
// Column types are inferred in the order Int, Float, Bool, Text over the
// non-empty cells; an all-empty column is Text.
Table load_csv(const std::filesystem::path& path, const TypeHints& hints = {},
               std::string table_name = "");

// Same parser over an in-memory document (used by tests and the case loader).
Table parse_csv(std::string_view text, const TypeHints& hints = {},
                std::string table_name = "");

// Inverse of load_csv up to type inference: integral Floats gain a ".0"
// suffix so a reload infers Float again.
std::string dump_csv(const Table& t);

// Loads <data_dir>/<domain>/<table>.csv for every CSV in the domain
// directory; table names are file stems.
TableCatalog load_catalog(const std::filesystem::path& data_dir, const std::string& domain,
                          const CatalogHints& hints = {});

// Low-level record reader shared with the report tooling.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);
std::string csv_escape(std::string_view field);

}  // namespace tag
