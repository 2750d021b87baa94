#include "tag/retrieval/index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tag/serialize.hpp"

namespace tag::retrieval {

VectorIndex::VectorIndex(std::vector<IndexEntry> entries) : entries_(std::move(entries)) {
  if (!entries_.empty()) {
    dim_ = entries_[0].vector.size();
    for (const auto& e : entries_) {
      if (e.vector.size() != dim_) {
        throw Error("index entries have mixed dimensions");
      }
    }
  }
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size()) throw Error("cosine of vectors with different dimensions");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

VectorIndex build_index(const TableCatalog& catalog, const Embedder& embedder) {
  std::vector<std::string> texts;
  std::vector<IndexEntry> entries;
  for (const auto& [name, table] : catalog.tables()) {
    for (std::size_t r = 0; r < table.row_count(); ++r) {
      texts.push_back(serialize_row(table, r));
      entries.push_back({name, r, {}});
    }
  }
  if (texts.empty()) return VectorIndex();
  auto vectors = embedder.embed(texts);
  if (vectors.size() != entries.size()) {
    throw Error("embedder returned " + std::to_string(vectors.size()) + " vectors for " +
                std::to_string(entries.size()) + " rows");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].vector = std::move(vectors[i]);
  return VectorIndex(std::move(entries));
}

std::vector<ScoredRow> search(const VectorIndex& index, const std::string& query,
                              std::size_t k, const Embedder& embedder) {
  if (k < 1) throw InvalidK("search requires k >= 1");
  if (index.size() == 0) throw EmptyIndex("search over an empty index");
  EmbeddingVector q = embedder.embed({query})[0];
  std::vector<std::size_t> order(index.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> scores(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    scores[i] = cosine(q, index.entries()[i].vector);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    const auto& ea = index.entries()[a];
    const auto& eb = index.entries()[b];
    if (ea.table_name != eb.table_name) return ea.table_name < eb.table_name;
    return ea.row_index < eb.row_index;
  });
  std::size_t take = std::min(k, order.size());
  std::vector<ScoredRow> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const auto& e = index.entries()[order[i]];
    out.push_back({e.table_name, e.row_index, scores[order[i]]});
  }
  return out;
}

std::string build_rerank_prompt(const std::string& request, const std::string& row_text) {
  return request + "\n\n" + row_text + "\n\n" + std::string(kRerankInstruction);
}

std::vector<ScoredRow> lm_rerank(const std::vector<ScoredRow>& rows,
                                 const TableCatalog& catalog, const std::string& request,
                                 const lm::LMBackend& backend, sem::Warnings* warnings) {
  std::vector<lm::LMRequest> requests;
  requests.reserve(rows.size());
  for (const auto& row : rows) {
    const Table& t = catalog.at(row.table_name);
    requests.push_back(
        {std::nullopt, build_rerank_prompt(request, serialize_row(t, row.row_index)), 512, 0.0});
  }
  auto outcomes = backend.complete_batch(requests);
  std::vector<ScoredRow> rescored = rows;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].ok()) {
      throw lm::LMError(outcomes[i].error_kind.value_or(lm::LMErrorKind::backend),
                        "lm_rerank: row " + std::to_string(i) + ": " +
                            outcomes[i].error_message);
    }
    auto score = sem::parse_first_decimal(outcomes[i].response->text);
    if (score) {
      rescored[i].score = std::clamp(*score, 0.0, 1.0);
    } else {
      rescored[i].score = 0.0;
      if (warnings) {
        warnings->add("lm_rerank: row " + std::to_string(i) + ": unparseable score '" +
                      outcomes[i].response->text + "', using 0.0");
      }
    }
  }
  std::stable_sort(rescored.begin(), rescored.end(),
                   [](const ScoredRow& a, const ScoredRow& b) { return a.score > b.score; });
  return rescored;
}

}  // namespace tag::retrieval
