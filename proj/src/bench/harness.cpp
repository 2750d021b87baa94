#include "tag/bench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <thread>

#include "tag/plan/eval.hpp"
#include "tag/retrieval/index.hpp"

namespace tag::bench {
namespace {

using Clock = std::chrono::steady_clock;

// One catalog (and optional row index) shared by every case with the same
// domain and hints.
struct Bundle {
  TableCatalog catalog;
  retrieval::VectorIndex index;
};

std::string bundle_key(const BenchmarkCase& c) {
  std::string key = c.domain + "|";
  for (const auto& [table, cols] : c.type_hints) {
    key += table + ":";
    for (const auto& [col, type] : cols) {
      key += col + "=" + std::string(to_string(type)) + ",";
    }
    key += ";";
  }
  return key;
}

std::optional<FailureKind> map_lm_error(const lm::LMError& e) {
  if (e.kind() == lm::LMErrorKind::context_overflow) return FailureKind::context_overflow;
  return FailureKind::backend;
}

}  // namespace

std::string_view display_name(Method m) {
  switch (m) {
    case Method::text2sql: return "Text2SQL";
    case Method::rag: return "RAG";
    case Method::retrieval_rank: return "Retrieval + LM Rank";
    case Method::text2sql_lm: return "Text2SQL + LM";
    case Method::handwritten: return "Hand-written TAG";
  }
  return "?";
}

std::string_view method_key(Method m) {
  switch (m) {
    case Method::text2sql: return "text2sql";
    case Method::rag: return "rag";
    case Method::retrieval_rank: return "retrieval_rank";
    case Method::text2sql_lm: return "text2sql_lm";
    case Method::handwritten: return "handwritten";
  }
  return "?";
}

Method parse_method(std::string_view key) {
  for (Method m : kAllMethods) {
    if (key == method_key(m)) return m;
  }
  throw FormatError("unknown method '" + std::string(key) + "'");
}

std::string_view to_string(FailureKind k) {
  switch (k) {
    case FailureKind::synthesis: return "synthesis";
    case FailureKind::context_overflow: return "context_overflow";
    case FailureKind::parse: return "parse";
    case FailureKind::backend: return "backend";
  }
  return "?";
}

FailureKind parse_failure_kind(std::string_view s) {
  for (FailureKind k : {FailureKind::synthesis, FailureKind::context_overflow,
                        FailureKind::parse, FailureKind::backend}) {
    if (s == to_string(k)) return k;
  }
  throw FormatError("unknown failure kind '" + std::string(s) + "'");
}

std::vector<EvalResult> run_benchmark(const std::vector<BenchmarkCase>& cases,
                                      const HarnessConfig& config,
                                      const lm::LMBackend& backend,
                                      const retrieval::Embedder& embedder) {
  bool needs_index =
      std::any_of(config.methods.begin(), config.methods.end(), [](Method m) {
        return m == Method::rag || m == Method::retrieval_rank;
      });

  // Shared read-only state is prepared up front; configuration problems are
  // fatal here rather than per-case failures.
  std::map<std::string, std::shared_ptr<Bundle>> bundles;
  std::vector<std::shared_ptr<Bundle>> case_bundle(cases.size());
  std::vector<std::unique_ptr<plan::PlanNode>> case_plan(cases.size());
  bool handwritten_requested = std::count(config.methods.begin(), config.methods.end(),
                                          Method::handwritten) > 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    std::string key = bundle_key(c);
    auto it = bundles.find(key);
    if (it == bundles.end()) {
      auto bundle = std::make_shared<Bundle>();
      bundle->catalog = load_catalog(config.data_dir, c.domain, c.type_hints);
      if (needs_index) bundle->index = retrieval::build_index(bundle->catalog, embedder);
      it = bundles.emplace(key, std::move(bundle)).first;
    }
    case_bundle[i] = it->second;
    if (handwritten_requested && c.plan_ref) {
      plan::PlanFile pf = plan::load_plan_file(config.plans_dir / *c.plan_ref);
      if (pf.case_id != c.id) {
        throw PlanError("plan file " + *c.plan_ref + " belongs to case '" + pf.case_id +
                        "', not '" + c.id + "'");
      }
      case_plan[i] = std::move(pf.plan);
    }
  }

  struct Job {
    std::size_t case_index;
    Method method;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (Method m : config.methods) jobs.push_back({i, m});
  }

  std::vector<EvalResult> results(jobs.size());
  std::atomic<std::size_t> next{0};

  auto run_one = [&](const Job& job, EvalResult& out) {
    const BenchmarkCase& c = cases[job.case_index];
    const Bundle& bundle = *case_bundle[job.case_index];
    out.case_id = c.id;
    out.method = job.method;
    out.query_type = c.query_type;
    out.capability = c.capability;
    bool scoreable = c.query_type != pipeline::QueryType::aggregation;

    auto start = Clock::now();
    try {
      pipeline::NLRequest req = c.request();
      switch (job.method) {
        case Method::text2sql:
          out.answer = pipeline::run_text2sql(req, bundle.catalog, backend, &out.stages);
          break;
        case Method::rag:
          out.answer =
              pipeline::run_rag(req, bundle.catalog, bundle.index, embedder, backend,
                                &out.stages);
          break;
        case Method::retrieval_rank:
          out.answer = pipeline::run_retrieval_rank(req, bundle.catalog, bundle.index,
                                                    embedder, backend, &out.stages);
          break;
        case Method::text2sql_lm:
          out.answer = pipeline::run_text2sql_lm(req, bundle.catalog, backend, &out.stages);
          break;
        case Method::handwritten: {
          const auto& p = case_plan[job.case_index];
          if (!p) throw PlanError("no hand-written plan for case '" + c.id + "'");
          out.answer = plan::run_plan(*p, bundle.catalog, backend, &out.stages);
          break;
        }
      }
      if (scoreable) {
        out.correct = out.answer.kind == pipeline::AnswerKind::value_list &&
                      exact_match(out.answer.values, *c.gold, c.query_type, config.scoring);
      }
    } catch (const lm::LMError& e) {
      out.failure_kind = map_lm_error(e);
    } catch (const AnswerParseError&) {
      out.failure_kind = FailureKind::parse;
    } catch (const Error&) {
      out.failure_kind = FailureKind::synthesis;
    } catch (const std::exception&) {
      out.failure_kind = FailureKind::synthesis;
    }
    if (out.failure_kind) {
      out.answer = pipeline::Answer::freeform("");
      if (scoreable) out.correct = false;
    }
    out.execution_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  };

  std::size_t worker_count = std::max<std::size_t>(1, std::min(config.workers, jobs.size()));
  std::vector<std::thread> workers;
  workers.reserve(worker_count);
  for (std::size_t w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        run_one(jobs[i], results[i]);
      }
    });
  }
  for (auto& t : workers) t.join();

  std::stable_sort(results.begin(), results.end(), [](const EvalResult& a, const EvalResult& b) {
    if (a.case_id != b.case_id) return a.case_id < b.case_id;
    return static_cast<int>(a.method) < static_cast<int>(b.method);
  });
  return results;
}

}  // namespace tag::bench
