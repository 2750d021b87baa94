#pragma once

// Fixed data and golden-file helpers shared by the prompt snapshot tests.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tag/table.hpp"

namespace testsup {

inline tag::TableCatalog golden_catalog() {
  tag::TableCatalog catalog("golden");
  tag::Table cities("cities",
                    tag::Schema({{"City", tag::ValueType::Text},
                                 {"Population", tag::ValueType::Int},
                                 {"Area", tag::ValueType::Float},
                                 {"Coastal", tag::ValueType::Bool}}));
  cities.append_row({tag::Value("Palo Alto"), tag::Value(68000), tag::Value(66.8),
                     tag::Value(false)});
  cities.append_row({tag::Value("Santa Cruz"), tag::Value(62000), tag::Value(12.25),
                     tag::Value(true)});
  catalog.add_table(std::move(cities));
  tag::Table schools("schools", tag::Schema({{"School", tag::ValueType::Text},
                                             {"City", tag::ValueType::Text},
                                             {"Enrollment", tag::ValueType::Int}}));
  schools.append_row({tag::Value("Sunrise"), tag::Value("Palo Alto"), tag::Value(450)});
  catalog.add_table(std::move(schools));
  return catalog;
}

// Goldens carry one trailing newline for file hygiene; no snapshotted string
// ends with a newline itself, so it is stripped on load.
inline std::string read_golden(const std::string& name) {
  std::string path = std::string(TAG_GOLDEN_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing golden file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

}  // namespace testsup
