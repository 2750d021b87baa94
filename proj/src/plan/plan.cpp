#include "tag/plan/plan.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tag::plan {
namespace {

using nlohmann::json;

Value literal_from_json(const json& j) {
  if (j.is_null()) return Value();
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Value(j.get<std::int64_t>());
  if (j.is_number_float()) return Value(j.get<double>());
  if (j.is_string()) return Value(j.get<std::string>());
  throw PlanError("literal must be a JSON scalar");
}

const json& require_key(const json& j, const char* key, OpKind op) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw PlanError(std::string(to_string(op)) + " needs a '" + key + "' key");
  }
  return *it;
}

std::string require_string(const json& j, const char* key, OpKind op) {
  const json& v = require_key(j, key, op);
  if (!v.is_string()) throw PlanError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const char* key) {
  if (!v.is_array()) throw PlanError(std::string("'") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) {
      throw PlanError(std::string("'") + key + "' must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::unique_ptr<PlanNode> node_from_json(const json& j);

std::unique_ptr<PlanNode> child_plan(const json& j, const char* key, OpKind op) {
  const json& v = require_key(j, key, op);
  if (!v.is_object()) throw PlanError(std::string("'") + key + "' must be an operator object");
  return node_from_json(v);
}

std::unique_ptr<PlanNode> node_from_json(const json& j) {
  if (!j.is_object()) throw PlanError("plan operator must be a JSON object");
  auto node = std::make_unique<PlanNode>();
  node->op = parse_op_kind(require_string(j, "op", OpKind::read));

  if (node->op != OpKind::read) node->input = child_plan(j, "input", node->op);

  switch (node->op) {
    case OpKind::read:
      node->table = require_string(j, "table", node->op);
      break;
    case OpKind::project:
      node->cols = string_list(require_key(j, "cols", node->op), "cols");
      break;
    case OpKind::filter:
      node->col = require_string(j, "col", node->op);
      node->cmp = parse_filter_cmp(require_string(j, "cmp", node->op));
      node->literal = literal_from_json(require_key(j, "literal", node->op));
      break;
    case OpKind::is_in:
      node->col = require_string(j, "col", node->op);
      node->subplan = child_plan(j, "plan", node->op);
      break;
    case OpKind::unique:
      node->col = require_string(j, "col", node->op);
      break;
    case OpKind::sort: {
      node->col = require_string(j, "col", node->op);
      if (j.contains("dir")) {
        std::string dir = require_string(j, "dir", node->op);
        if (dir == "desc") {
          node->descending = true;
        } else if (dir != "asc") {
          throw PlanError("'dir' must be \"asc\" or \"desc\"");
        }
      }
      if (j.contains("by_absolute")) {
        if (!j["by_absolute"].is_boolean()) throw PlanError("'by_absolute' must be a boolean");
        node->by_absolute = j["by_absolute"].get<bool>();
      }
      break;
    }
    case OpKind::limit: {
      const json& v = require_key(j, "n", node->op);
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw PlanError("'n' must be a non-negative integer");
      }
      node->n = v.get<std::size_t>();
      break;
    }
    case OpKind::join:
      node->subplan = child_plan(j, "plan", node->op);
      node->left_col = require_string(j, "left_col", node->op);
      node->right_col = require_string(j, "right_col", node->op);
      break;
    case OpKind::sem_filter:
      node->tpl = require_string(j, "tpl", node->op);
      break;
    case OpKind::sem_topk: {
      node->tpl = require_string(j, "tpl", node->op);
      const json& v = require_key(j, "k", node->op);
      if (!v.is_number_integer()) throw PlanError("'k' must be an integer");
      node->k = v.get<int>();
      break;
    }
    case OpKind::sem_agg:
      node->instruction = require_string(j, "instruction", node->op);
      if (j.contains("all_cols")) {
        if (!j["all_cols"].is_boolean()) throw PlanError("'all_cols' must be a boolean");
        node->all_cols = j["all_cols"].get<bool>();
      }
      break;
    case OpKind::sem_map:
      node->tpl = require_string(j, "tpl", node->op);
      node->out_col = require_string(j, "out_col", node->op);
      break;
    case OpKind::extract:
      if (j.contains("cols")) node->cols = string_list(j["cols"], "cols");
      break;
  }
  return node;
}

}  // namespace

std::string_view to_string(OpKind op) {
  switch (op) {
    case OpKind::read: return "read";
    case OpKind::project: return "project";
    case OpKind::filter: return "filter";
    case OpKind::is_in: return "is_in";
    case OpKind::unique: return "unique";
    case OpKind::sort: return "sort";
    case OpKind::limit: return "limit";
    case OpKind::join: return "join";
    case OpKind::sem_filter: return "sem_filter";
    case OpKind::sem_topk: return "sem_topk";
    case OpKind::sem_agg: return "sem_agg";
    case OpKind::sem_map: return "sem_map";
    case OpKind::extract: return "extract";
  }
  return "read";
}

OpKind parse_op_kind(std::string_view s) {
  for (OpKind op : {OpKind::read, OpKind::project, OpKind::filter, OpKind::is_in,
                    OpKind::unique, OpKind::sort, OpKind::limit, OpKind::join,
                    OpKind::sem_filter, OpKind::sem_topk, OpKind::sem_agg, OpKind::sem_map,
                    OpKind::extract}) {
    if (s == to_string(op)) return op;
  }
  throw PlanError("unknown plan op '" + std::string(s) + "'");
}

FilterCmp parse_filter_cmp(std::string_view s) {
  if (s == "=" || s == "==") return FilterCmp::eq;
  if (s == "!=" || s == "<>") return FilterCmp::ne;
  if (s == "<") return FilterCmp::lt;
  if (s == "<=") return FilterCmp::le;
  if (s == ">") return FilterCmp::gt;
  if (s == ">=") return FilterCmp::ge;
  if (s == "like") return FilterCmp::like;
  throw PlanError("unknown filter comparator '" + std::string(s) + "'");
}

std::unique_ptr<PlanNode> parse_plan(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw PlanError("plan is not valid JSON");
  return node_from_json(j);
}

PlanFile load_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read plan file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw PlanError("plan file " + path.string() + " is not valid JSON");
  if (!j.is_object() || !j.contains("case_id") || !j["case_id"].is_string() ||
      !j.contains("plan")) {
    throw PlanError("plan file needs string 'case_id' and object 'plan' keys");
  }
  PlanFile out;
  out.case_id = j["case_id"].get<std::string>();
  out.plan = node_from_json(j["plan"]);
  return out;
}

}  // namespace tag::plan
