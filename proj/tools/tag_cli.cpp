#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tag/bench/harness.hpp"
#include "tag/bench/report.hpp"
#include "tag/lm/http_backend.hpp"
#include "tag/lm/mock_backend.hpp"
#include "tag/plan/eval.hpp"
#include "tag/retrieval/index.hpp"

namespace {

struct BackendChoice {
  std::string mock_rules;
  bool live = false;

  std::shared_ptr<tag::lm::LMBackend> make_backend() const {
    if (live) return std::make_shared<tag::lm::HttpLMBackend>(tag::lm::HttpLMBackend::from_env());
    return tag::lm::load_mock_backend(mock_rules);
  }

  std::shared_ptr<tag::retrieval::Embedder> make_embedder() const {
    if (live) {
      return std::make_shared<tag::retrieval::HttpEmbedder>(
          tag::retrieval::HttpEmbedder::from_env());
    }
    return std::make_shared<tag::retrieval::MockEmbedder>();
  }
};

void add_backend_flags(CLI::App* cmd, BackendChoice& choice) {
  auto* rules = cmd->add_option("--mock-rules", choice.mock_rules,
                                "mock backend rules file (JSON)");
  auto* live = cmd->add_flag("--live", choice.live,
                             "use the HTTP backend configured via TAG_LM_* / TAG_EMBED_*");
  rules->excludes(live);
  live->excludes(rules);
  cmd->callback([rules, live] {
    if (rules->count() == 0 && live->count() == 0) {
      throw CLI::ValidationError("backend", "pass --mock-rules <file> or --live");
    }
  });
}

std::vector<tag::bench::Method> parse_methods(const std::string& spec) {
  if (spec.empty() || spec == "all") {
    return {std::begin(tag::bench::kAllMethods), std::end(tag::bench::kAllMethods)};
  }
  std::vector<tag::bench::Method> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(tag::bench::parse_method(item));
  }
  if (out.empty()) throw tag::FormatError("no methods in '" + spec + "'");
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tag::IoError("cannot write " + path.string());
  out << content;
}

int cmd_bench(const std::string& cases_file, const std::string& data_dir,
              const std::string& plans_dir, const std::string& methods_spec,
              const BackendChoice& choice, std::size_t workers,
              const std::string& report_path) {
  auto cases = tag::bench::load_cases(cases_file);
  tag::bench::HarnessConfig config;
  config.data_dir = data_dir;
  config.plans_dir = plans_dir.empty() ? std::filesystem::path(data_dir) / "plans"
                                       : std::filesystem::path(plans_dir);
  config.methods = parse_methods(methods_spec);
  config.workers = workers;

  auto backend = choice.make_backend();
  auto embedder = choice.make_embedder();
  auto results = tag::bench::run_benchmark(cases, config, *backend, *embedder);

  std::string report = tag::bench::render_report(results);
  std::cout << report;
  if (!report_path.empty()) {
    std::filesystem::path md(report_path);
    write_file(md, report);
    std::filesystem::path csv = md;
    csv.replace_extension(".csv");
    write_file(csv, tag::bench::results_to_csv(results));
    std::cerr << "wrote " << md.string() << " and " << csv.string() << "\n";
  }
  return 0;
}

int cmd_run(const std::string& cases_file, const std::string& data_dir,
            const std::string& plans_dir, const std::string& case_id,
            const std::string& method_key, const BackendChoice& choice) {
  auto cases = tag::bench::load_cases(cases_file);
  tag::bench::HarnessConfig config;
  config.data_dir = data_dir;
  config.plans_dir = plans_dir.empty() ? std::filesystem::path(data_dir) / "plans"
                                       : std::filesystem::path(plans_dir);
  config.methods = {tag::bench::parse_method(method_key)};
  config.workers = 1;

  std::vector<tag::bench::BenchmarkCase> selected;
  for (auto& c : cases) {
    if (c.id == case_id) selected.push_back(std::move(c));
  }
  if (selected.empty()) throw tag::FormatError("no case with id '" + case_id + "'");

  auto backend = choice.make_backend();
  auto embedder = choice.make_embedder();
  auto results = tag::bench::run_benchmark(selected, config, *backend, *embedder);
  const auto& r = results.at(0);

  std::cout << "case: " << r.case_id << "\n"
            << "method: " << tag::bench::display_name(r.method) << "\n"
            << "answer: " << r.answer.render() << "\n";
  if (r.correct) std::cout << "correct: " << (*r.correct ? "true" : "false") << "\n";
  if (r.failure_kind) std::cout << "failure: " << tag::bench::to_string(*r.failure_kind) << "\n";
  std::cout << "execution_time_s: " << tag::render_double(r.execution_time_s) << "\n";
  return r.failure_kind ? 1 : 0;
}

int cmd_plan(const std::string& plan_file, const std::string& data_dir,
             const std::string& domain, const BackendChoice& choice) {
  tag::plan::PlanFile pf = tag::plan::load_plan_file(plan_file);
  tag::TableCatalog catalog = tag::load_catalog(data_dir, domain);
  auto backend = choice.make_backend();
  tag::pipeline::Answer answer = tag::plan::run_plan(*pf.plan, catalog, *backend);
  std::cout << answer.render() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tag: table-augmented generation benchmark runner"};
  app.require_subcommand(1);

  std::string cases_file, data_dir, plans_dir, report_path, case_id;
  std::string methods_spec = "all";
  std::string method_key = "handwritten";
  std::string plan_file, domain;
  std::size_t workers = 4;
  BackendChoice bench_choice, run_choice, plan_choice;

  auto* bench = app.add_subcommand("bench", "run benchmark cases and print a report");
  bench->add_option("--cases", cases_file, "benchmark case file (JSON array)")->required();
  bench->add_option("--data-dir", data_dir, "directory holding <domain>/<table>.csv")
      ->required();
  bench->add_option("--plans", plans_dir, "plan directory (default: <data-dir>/plans)");
  bench->add_option("--methods", methods_spec,
                    "comma-separated subset of text2sql,rag,retrieval_rank,text2sql_lm,"
                    "handwritten (default: all)");
  bench->add_option("--workers", workers, "concurrent (case, method) runs");
  bench->add_option("--report", report_path,
                    "write the markdown report here and the result CSV alongside");
  add_backend_flags(bench, bench_choice);

  auto* run = app.add_subcommand("run", "run one case with one method");
  run->add_option("--cases", cases_file, "benchmark case file (JSON array)")->required();
  run->add_option("--data-dir", data_dir, "directory holding <domain>/<table>.csv")
      ->required();
  run->add_option("--plans", plans_dir, "plan directory (default: <data-dir>/plans)");
  run->add_option("--case", case_id, "case id")->required();
  run->add_option("--method", method_key, "method key")->required();
  add_backend_flags(run, run_choice);

  auto* plan = app.add_subcommand("plan", "execute one plan file and print the answer");
  plan->add_option("--file", plan_file, "plan file (JSON)")->required();
  plan->add_option("--data-dir", data_dir, "directory holding <domain>/<table>.csv")
      ->required();
  plan->add_option("--domain", domain, "domain (subdirectory) to load")->required();
  add_backend_flags(plan, plan_choice);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      return cmd_bench(cases_file, data_dir, plans_dir, methods_spec, bench_choice, workers,
                       report_path);
    }
    if (run->parsed()) {
      return cmd_run(cases_file, data_dir, plans_dir, case_id, method_key, run_choice);
    }
    if (plan->parsed()) {
      return cmd_plan(plan_file, data_dir, domain, plan_choice);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
