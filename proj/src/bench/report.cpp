#include "tag/bench/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "tag/csv.hpp"
#include "tag/pipeline/answer.hpp"

namespace tag::bench {
namespace {

constexpr pipeline::QueryType kTypes[] = {
    pipeline::QueryType::match, pipeline::QueryType::comparison,
    pipeline::QueryType::ranking, pipeline::QueryType::aggregation};
constexpr pipeline::Capability kCapabilities[] = {pipeline::Capability::knowledge,
                                                  pipeline::Capability::reasoning};

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Running exact-match and execution-time averages over one result slice.
struct Accum {
  std::size_t em_hits = 0;
  std::size_t em_n = 0;
  double et_sum = 0.0;
  std::size_t et_n = 0;

  void add(const EvalResult& r) {
    et_sum += r.execution_time_s;
    ++et_n;
    if (r.correct) {
      if (*r.correct) ++em_hits;
      ++em_n;
    }
  }
  std::string em_cell() const {
    return em_n ? fmt2(static_cast<double>(em_hits) / static_cast<double>(em_n)) : "N/A";
  }
  std::string et_cell() const {
    return et_n ? fmt2(et_sum / static_cast<double>(et_n)) : "N/A";
  }
};

std::vector<Method> methods_present(const std::vector<EvalResult>& results) {
  std::vector<Method> out;
  for (Method m : kAllMethods) {
    if (std::any_of(results.begin(), results.end(),
                    [m](const EvalResult& r) { return r.method == m; })) {
      out.push_back(m);
    }
  }
  return out;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  out += "|";
  for (const auto& c : cells) out += " " + c + " |";
  out += "\n";
}

void append_rule(std::string& out, std::size_t n) {
  out += "|";
  for (std::size_t i = 0; i < n; ++i) out += " --- |";
  out += "\n";
}

}  // namespace

std::string render_report(const std::vector<EvalResult>& results) {
  std::string out = "# Benchmark results\n\n## By query type\n\n";

  std::vector<std::string> header = {"Method", "Overall EM", "Overall ET (s)"};
  for (auto t : kTypes) {
    std::string label(pipeline::to_string(t));
    label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    header.push_back(label + " EM");
    header.push_back(label + " ET (s)");
  }
  append_row(out, header);
  append_rule(out, header.size());

  for (Method m : methods_present(results)) {
    Accum by_type[4];
    for (const auto& r : results) {
      if (r.method != m) continue;
      for (std::size_t t = 0; t < 4; ++t) {
        if (r.query_type == kTypes[t]) by_type[t].add(r);
      }
    }
    // Overall averages the per-type averages, over the types that have one.
    double em_sum = 0.0, et_sum = 0.0;
    std::size_t em_types = 0, et_types = 0;
    for (const auto& a : by_type) {
      if (a.em_n) {
        em_sum += static_cast<double>(a.em_hits) / static_cast<double>(a.em_n);
        ++em_types;
      }
      if (a.et_n) {
        et_sum += a.et_sum / static_cast<double>(a.et_n);
        ++et_types;
      }
    }
    std::vector<std::string> cells = {std::string(display_name(m)),
                                      em_types ? fmt2(em_sum / em_types) : "N/A",
                                      et_types ? fmt2(et_sum / et_types) : "N/A"};
    for (const auto& a : by_type) {
      cells.push_back(a.em_cell());
      cells.push_back(a.et_cell());
    }
    append_row(out, cells);
  }

  out += "\n## By capability\n\n";
  append_row(out, {"Method", "Knowledge EM", "Knowledge ET (s)", "Reasoning EM",
                   "Reasoning ET (s)"});
  append_rule(out, 5);
  for (Method m : methods_present(results)) {
    Accum by_cap[2];
    for (const auto& r : results) {
      if (r.method != m) continue;
      by_cap[r.capability == pipeline::Capability::knowledge ? 0 : 1].add(r);
    }
    append_row(out, {std::string(display_name(m)), by_cap[0].em_cell(), by_cap[0].et_cell(),
                     by_cap[1].em_cell(), by_cap[1].et_cell()});
  }
  return out;
}

std::string results_to_csv(const std::vector<EvalResult>& results) {
  std::string out =
      "case_id,method,query_type,capability,correct,failure_kind,execution_time_s,"
      "answer_kind,answer\n";
  for (const auto& r : results) {
    std::vector<std::string> cells = {
        r.case_id,
        std::string(method_key(r.method)),
        std::string(pipeline::to_string(r.query_type)),
        std::string(pipeline::to_string(r.capability)),
        r.correct ? (*r.correct ? "true" : "false") : "",
        r.failure_kind ? std::string(to_string(*r.failure_kind)) : "",
        render_double(r.execution_time_s),
        r.answer.kind == pipeline::AnswerKind::value_list ? "value_list" : "free_text",
        r.answer.render(),
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ",";
      out += csv_escape(cells[i]);
    }
    out += "\n";
  }
  return out;
}

std::vector<EvalResult> parse_results_csv(const std::string& csv_text) {
  auto records = parse_csv_records(csv_text);
  if (records.empty()) throw FormatError("results csv has no header");
  const std::vector<std::string> expected = {
      "case_id", "method",       "query_type",       "capability", "correct",
      "failure_kind", "execution_time_s", "answer_kind", "answer"};
  if (records[0] != expected) throw FormatError("results csv has an unexpected header");
  std::vector<EvalResult> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.size() != expected.size()) {
      throw FormatError("results csv row " + std::to_string(i) + " has " +
                        std::to_string(rec.size()) + " fields");
    }
    EvalResult r;
    r.case_id = rec[0];
    r.method = parse_method(rec[1]);
    r.query_type = pipeline::parse_query_type(rec[2]);
    r.capability = pipeline::parse_capability(rec[3]);
    if (!rec[4].empty()) {
      if (rec[4] != "true" && rec[4] != "false") {
        throw FormatError("results csv row " + std::to_string(i) + ": bad correct flag");
      }
      r.correct = rec[4] == "true";
    }
    if (!rec[5].empty()) r.failure_kind = parse_failure_kind(rec[5]);
    try {
      r.execution_time_s = std::stod(rec[6]);
    } catch (const std::exception&) {
      throw FormatError("results csv row " + std::to_string(i) + ": bad execution time");
    }
    if (rec[7] == "value_list") {
      r.answer = pipeline::Answer::list(pipeline::parse_answer_list(rec[8]));
    } else if (rec[7] == "free_text") {
      r.answer = pipeline::Answer::freeform(rec[8]);
    } else {
      throw FormatError("results csv row " + std::to_string(i) + ": bad answer kind");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tag::bench
