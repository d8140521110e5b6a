#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ssakg/graph.hpp"
#include "ssakg/ordering.hpp"

namespace ssakg {

// Unordered recall cue. Symbols are kept sorted, so any presentation order of
// the same set yields the same context.
class Context {
 public:
  // Throws InvalidParams on an empty or repeated symbol list.
  explicit Context(std::vector<SymbolId> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<SymbolId>& symbols() const noexcept { return symbols_; }

 private:
  std::vector<SymbolId> symbols_;
};

struct RecallResult {
  std::vector<SymbolId> candidates;  // ascending
  std::vector<Sequence> orderings;
  std::size_t branch_count = 0;
  bool unique = false;
};

// Context plus every other node joined (in either direction) to all context
// symbols. Throws InconsistentContext when two context symbols are not
// joined, since no stored sequence can hold both.
std::vector<SymbolId> candidate_set(const Graph& graph, const Context& ctx);

// Candidate selection followed by ordering. target_len defaults to the
// candidate count. simple sort yields its single unvalidated ordering truncated
// to target_len.
RecallResult recall_sequence(const Graph& graph, const Context& ctx, Algorithm algo,
                             std::optional<std::size_t> target_len = std::nullopt,
                             std::size_t branch_budget = kDefaultBranchBudget);

// Same as recall_sequence for a candidate set computed beforehand.
RecallResult recall_from_candidates(const Graph& graph, const Context& ctx, std::vector<SymbolId> candidates,
                                    Algorithm algo, std::optional<std::size_t> target_len = std::nullopt,
                                    std::size_t branch_budget = kDefaultBranchBudget);

}  // namespace ssakg
