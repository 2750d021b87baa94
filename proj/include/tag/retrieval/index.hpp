#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tag/lm/backend.hpp"
#include "tag/retrieval/embedder.hpp"
#include "tag/sem/operators.hpp"
#include "tag/table.hpp"

namespace tag::retrieval {

struct IndexEntry {
  std::string table_name;
  std::size_t row_index = 0;
  EmbeddingVector vector;
};

// Flat exact index over every row of a catalog, in (table name, row) order.
class VectorIndex {
 public:
  VectorIndex() = default;
  explicit VectorIndex(std::vector<IndexEntry> entries);

  const std::vector<IndexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::vector<IndexEntry> entries_;
  std::size_t dim_ = 0;
};

struct ScoredRow {
  std::string table_name;
  std::size_t row_index = 0;
  double score = 0.0;
};

// Embeds serialize_row(all columns) for every row of every table.
VectorIndex build_index(const TableCatalog& catalog, const Embedder& embedder);

// Exact cosine top-k, ties broken by (table_name, row_index) ascending.
std::vector<ScoredRow> search(const VectorIndex& index, const std::string& query,
                              std::size_t k, const Embedder& embedder);

// Published rerank instruction; golden-snapshot tested.
inline constexpr std::string_view kRerankInstruction =
    "Rate the relevance of this data point to the request on a scale from 0 to 1. Respond "
    "with only the number.";

std::string build_rerank_prompt(const std::string& request, const std::string& row_text);

// Rescores rows with one LM call each (first decimal, clamped to [0, 1],
// unparseable scores 0.0 with a warning) and stable-sorts descending.
// Returns all rows.
std::vector<ScoredRow> lm_rerank(const std::vector<ScoredRow>& rows,
                                 const TableCatalog& catalog, const std::string& request,
                                 const lm::LMBackend& backend,
                                 sem::Warnings* warnings = nullptr);

double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace tag::retrieval
