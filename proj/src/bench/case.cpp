#include "tag/bench/case.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tag::bench {
namespace {

using nlohmann::json;

Value value_from_json(const json& j, const std::string& where) {
  if (j.is_null()) return Value();
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Value(j.get<std::int64_t>());
  if (j.is_number_float()) return Value(j.get<double>());
  if (j.is_string()) return Value(j.get<std::string>());
  throw FormatError(where + ": gold values must be JSON scalars");
}

std::string require_string(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw FormatError(where + ": needs a string '" + key + "' key");
  }
  return it->get<std::string>();
}

BenchmarkCase case_from_json(const json& j, std::size_t index) {
  std::string where = "case " + std::to_string(index);
  if (!j.is_object()) throw FormatError(where + ": must be a JSON object");
  BenchmarkCase c;
  c.id = require_string(j, "id", where);
  where = "case " + std::to_string(index) + " (" + c.id + ")";
  c.domain = require_string(j, "domain", where);
  c.query_type = pipeline::parse_query_type(require_string(j, "query_type", where));
  c.capability = pipeline::parse_capability(require_string(j, "capability", where));
  c.request_text = require_string(j, "request", where);

  bool scoreable = c.query_type != pipeline::QueryType::aggregation;
  if (j.contains("gold")) {
    if (!scoreable) {
      throw FormatError(where + ": aggregation cases must not carry a gold answer");
    }
    const json& g = j["gold"];
    if (!g.is_array()) throw FormatError(where + ": 'gold' must be an array");
    std::vector<Value> gold;
    for (const auto& item : g) gold.push_back(value_from_json(item, where));
    c.gold = std::move(gold);
  } else if (scoreable) {
    throw FormatError(where + ": " + std::string(pipeline::to_string(c.query_type)) +
                      " cases need a gold answer");
  }

  if (j.contains("plan")) {
    if (!j["plan"].is_string()) throw FormatError(where + ": 'plan' must be a string");
    c.plan_ref = j["plan"].get<std::string>();
  }

  if (j.contains("type_hints")) {
    const json& h = j["type_hints"];
    if (!h.is_object()) throw FormatError(where + ": 'type_hints' must be an object");
    for (const auto& [table, cols] : h.items()) {
      if (!cols.is_object()) throw FormatError(where + ": 'type_hints' entries must be objects");
      for (const auto& [col, type_name] : cols.items()) {
        if (!type_name.is_string()) {
          throw FormatError(where + ": type hints must be type-name strings");
        }
        auto type = parse_value_type(type_name.get<std::string>());
        if (!type) {
          throw FormatError(where + ": unknown type '" + type_name.get<std::string>() + "'");
        }
        c.type_hints[table][col] = *type;
      }
    }
  }
  return c;
}

}  // namespace

std::vector<BenchmarkCase> parse_cases(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw FormatError("case file is not valid JSON");
  if (!doc.is_array()) throw FormatError("case file must be a top-level JSON array");
  std::vector<BenchmarkCase> cases;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    BenchmarkCase c = case_from_json(doc[i], i);
    if (!ids.insert(c.id).second) {
      throw FormatError("case " + std::to_string(i) + ": duplicate id '" + c.id + "'");
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

std::vector<BenchmarkCase> load_cases(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read case file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cases(buf.str());
}

}  // namespace tag::bench
