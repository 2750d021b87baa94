#include "tag/sem/operators.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "tag/errors.hpp"
#include "tag/serialize.hpp"

namespace tag::sem {
namespace {

bool starts_with_true(std::string_view response) {
  std::size_t i = 0;
  while (i < response.size() && std::isspace(static_cast<unsigned char>(response[i]))) ++i;
  if (response.size() - i < 4) return false;
  auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
  return lower(response[i]) == 't' && lower(response[i + 1]) == 'r' &&
         lower(response[i + 2]) == 'u' && lower(response[i + 3]) == 'e';
}

[[noreturn]] void rethrow_slot(const char* op, std::size_t row, const lm::LMOutcome& outcome) {
  throw lm::LMError(outcome.error_kind.value_or(lm::LMErrorKind::backend),
                    std::string(op) + ": row " + std::to_string(row) + ": " +
                        outcome.error_message);
}

Table keep_rows(const Table& t, const std::vector<std::size_t>& indices) {
  Table out(t.name(), t.schema());
  for (std::size_t i : indices) out.append_row(t.row(i));
  return out;
}

std::optional<std::vector<std::string>> agg_columns(const Table& t,
                                                    const std::string& instruction,
                                                    bool use_all_columns) {
  if (use_all_columns) return std::nullopt;
  PromptTemplate tpl(instruction);
  std::vector<std::string> cols;
  for (const auto& name : tpl.referenced_columns()) {
    if (t.schema().index_of(name)) cols.push_back(name);
  }
  if (cols.empty()) return std::nullopt;
  return cols;
}

}  // namespace

std::optional<double> parse_first_decimal(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    bool digit = std::isdigit(static_cast<unsigned char>(text[i]));
    bool dot_digit = text[i] == '.' && i + 1 < text.size() &&
                     std::isdigit(static_cast<unsigned char>(text[i + 1]));
    if (!digit && !dot_digit) continue;
    std::size_t start = i;
    if (i > 0 && text[i - 1] == '-') start = i - 1;
    std::size_t end = i;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end < text.size() && text[end] == '.') {
      ++end;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    }
    double out = 0.0;
    auto [p, ec] = std::from_chars(text.data() + start, text.data() + end, out);
    if (ec == std::errc() && p == text.data() + end) return out;
    return std::nullopt;
  }
  return std::nullopt;
}

std::string build_filter_prompt(const std::string& claim) {
  return std::string(kFilterInstruction) + "\n\n" + claim;
}

std::string build_topk_prompt(const std::string& item) {
  return std::string(kTopkInstruction) + "\n\n" + item;
}

std::string build_agg_prompt(const std::string& instruction, const std::string& table_text) {
  if (table_text.empty()) return instruction;
  return instruction + "\n\n" + table_text;
}

Table sem_filter(const Table& t, const PromptTemplate& tpl, const lm::LMBackend& backend) {
  std::vector<lm::LMRequest> requests;
  requests.reserve(t.row_count());
  for (std::size_t i = 0; i < t.row_count(); ++i) {
    requests.push_back({std::nullopt, build_filter_prompt(tpl.instantiate(t, i)), 512, 0.0});
  }
  auto outcomes = backend.complete_batch(requests);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].ok()) rethrow_slot("sem_filter", i, outcomes[i]);
    if (starts_with_true(outcomes[i].response->text)) kept.push_back(i);
  }
  return keep_rows(t, kept);
}

Table sem_topk(const Table& t, const PromptTemplate& tpl, int k, const lm::LMBackend& backend,
               Warnings* warnings) {
  if (k < 1) throw InvalidK("sem_topk requires k >= 1, got " + std::to_string(k));
  std::vector<lm::LMRequest> requests;
  requests.reserve(t.row_count());
  for (std::size_t i = 0; i < t.row_count(); ++i) {
    requests.push_back({std::nullopt, build_topk_prompt(tpl.instantiate(t, i)), 512, 0.0});
  }
  auto outcomes = backend.complete_batch(requests);
  std::vector<double> scores(outcomes.size(), 0.0);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].ok()) rethrow_slot("sem_topk", i, outcomes[i]);
    if (auto score = parse_first_decimal(outcomes[i].response->text)) {
      scores[i] = *score;
    } else if (warnings) {
      warnings->add("sem_topk: row " + std::to_string(i) + ": unparseable score '" +
                    outcomes[i].response->text + "', using 0.0");
    }
  }
  std::vector<std::size_t> order(t.row_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
  order.resize(take);
  return keep_rows(t, order);
}

std::string sem_agg(const Table& t, const std::string& instruction,
                    const lm::LMBackend& backend, bool use_all_columns) {
  auto columns = agg_columns(t, instruction, use_all_columns);
  std::size_t budget_chars = backend.context_budget_tokens() * 4;

  // Greedy packing by serialized size; prompt length for m blocks is
  // len(instruction) + 2 + sum(len(block)) + 2*(m-1).
  auto aggregate_blocks = [&](const std::vector<std::string>& blocks) -> std::vector<std::string> {
    std::vector<std::string> answers;
    std::size_t i = 0;
    while (i < blocks.size()) {
      std::size_t total = instruction.size() + 2 + blocks[i].size();
      std::size_t j = i + 1;
      while (j < blocks.size() && total + 2 + blocks[j].size() <= budget_chars) {
        total += 2 + blocks[j].size();
        ++j;
      }
      std::string table_text;
      for (std::size_t b = i; b < j; ++b) {
        if (b > i) table_text += "\n\n";
        table_text += "Data Point " + std::to_string(b - i + 1) + ":\n" + blocks[b];
      }
      // Oversized single rows are sent anyway; complete() raises the
      // overflow so the caller sees the real constraint.
      answers.push_back(
          backend.complete({std::nullopt, build_agg_prompt(instruction, table_text), 512, 0.0})
              .text);
      i = j;
    }
    return answers;
  };

  std::vector<std::string> blocks;
  blocks.reserve(t.row_count());
  for (std::size_t i = 0; i < t.row_count(); ++i) {
    blocks.push_back(serialize_row(t, i, columns));
  }
  if (blocks.empty()) {
    return backend.complete({std::nullopt, build_agg_prompt(instruction, ""), 512, 0.0}).text;
  }
  std::vector<std::string> answers = aggregate_blocks(blocks);
  while (answers.size() > 1) {
    std::vector<std::string> fold_blocks;
    fold_blocks.reserve(answers.size());
    for (const auto& a : answers) fold_blocks.push_back("- Answer: " + a);
    std::vector<std::string> folded = aggregate_blocks(fold_blocks);
    // Every fold level must merge at least one pair, or the loop would call
    // the backend forever with the same prompts.
    if (folded.size() >= answers.size()) {
      throw lm::LMError(lm::LMErrorKind::context_overflow,
                        "sem_agg: partial answers cannot be folded within the context budget");
    }
    answers = std::move(folded);
  }
  return answers.front();
}

Table sem_map(const Table& t, const PromptTemplate& tpl, const std::string& out_column,
              const lm::LMBackend& backend) {
  if (t.schema().index_of(out_column)) {
    throw DuplicateColumn("sem_map output column already exists: " + out_column);
  }
  std::vector<lm::LMRequest> requests;
  requests.reserve(t.row_count());
  for (std::size_t i = 0; i < t.row_count(); ++i) {
    requests.push_back({std::nullopt, tpl.instantiate(t, i), 512, 0.0});
  }
  auto outcomes = backend.complete_batch(requests);
  std::vector<Column> cols = t.schema().columns();
  cols.push_back({out_column, ValueType::Text});
  Table out(t.name(), Schema(std::move(cols)));
  for (std::size_t i = 0; i < t.row_count(); ++i) {
    if (!outcomes[i].ok()) rethrow_slot("sem_map", i, outcomes[i]);
    Row r = t.row(i);
    r.emplace_back(outcomes[i].response->text);
    out.append_row(std::move(r));
  }
  return out;
}

}  // namespace tag::sem
