#pragma once

#include "tag/sql/ast.hpp"
#include "tag/table.hpp"

namespace tag::sql {

// Resolves every table and column reference and checks aggregate placement.
// Throws UnknownTable for a missing relation and SemanticError listing all
// unresolved or ambiguous column names.
void validate(const SqlAst& ast, const TableCatalog& catalog);

// Left-deep nested-loop join order; two-valued WHERE logic (Null fails every
// predicate); stable sorts; deterministic output order for identical inputs.
Table execute_sql(const SqlAst& ast, const TableCatalog& catalog);

}  // namespace tag::sql
