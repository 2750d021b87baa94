#pragma once

#include "tag/lm/backend.hpp"
#include "tag/pipeline/answer.hpp"
#include "tag/pipeline/methods.hpp"
#include "tag/plan/plan.hpp"
#include "tag/table.hpp"

namespace tag::plan {

// Evaluates one non-terminal operator subtree to a table. extract and
// sem_agg produce answers, not tables, so they are rejected here.
Table eval_table(const PlanNode& node, const TableCatalog& catalog,
                 const lm::LMBackend& backend);

// Runs a complete plan. The terminal operator must be extract (value list)
// or sem_agg (free text); anything else is a PlanError.
pipeline::Answer run_plan(const PlanNode& plan, const TableCatalog& catalog,
                          const lm::LMBackend& backend,
                          pipeline::StageTimes* stages = nullptr);

}  // namespace tag::plan
