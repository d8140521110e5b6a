#include "ssakg/recall.hpp"

#include <algorithm>
#include <string>

#include "ssakg/error.hpp"

namespace ssakg {

Context::Context(std::vector<SymbolId> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorCode::InvalidParams, "context must hold at least one symbol");
  std::sort(symbols_.begin(), symbols_.end());
  if (std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end()) {
    throw Error(ErrorCode::InvalidParams, "context symbols must be distinct");
  }
}

std::vector<SymbolId> candidate_set(const Graph& graph, const Context& ctx) {
  const auto& ids = ctx.symbols();
  const std::size_t n = graph.node_count();
  if (ids.back() >= n) {
    throw Error(ErrorCode::SymbolOutOfRange, "context symbol " + std::to_string(ids.back()) + " outside graph");
  }
  const BitMatrix& sym = graph.symmetric();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!sym.test(ids[i], ids[j])) {
        throw Error(ErrorCode::InconsistentContext, "context symbols " + std::to_string(ids[i]) + " and " +
                                                        std::to_string(ids[j]) + " never co-occur");
      }
    }
  }

  // AND of the symmetric rows of all context members
  std::vector<BitMatrix::Word> acc(sym.row(ids.front()).begin(), sym.row(ids.front()).end());
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const auto row = sym.row(ids[i]);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= row[w];
  }
  for (SymbolId s : ids) acc[s / BitMatrix::kWordBits] |= BitMatrix::Word{1} << (s % BitMatrix::kWordBits);

  std::vector<SymbolId> out;
  for (std::size_t w = 0; w < acc.size(); ++w) {
    BitMatrix::Word bits = acc[w];
    while (bits != 0) {
      out.push_back(static_cast<SymbolId>(w * BitMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
  return out;
}

RecallResult recall_sequence(const Graph& graph, const Context& ctx, Algorithm algo,
                             std::optional<std::size_t> target_len, std::size_t branch_budget) {
  return recall_from_candidates(graph, ctx, candidate_set(graph, ctx), algo, target_len, branch_budget);
}

RecallResult recall_from_candidates(const Graph& graph, const Context& ctx, std::vector<SymbolId> candidates,
                                    Algorithm algo, std::optional<std::size_t> target_len,
                                    std::size_t branch_budget) {
  RecallResult result;
  result.candidates = std::move(candidates);
  const std::size_t target = target_len.value_or(result.candidates.size());
  if (target < 1 || target > result.candidates.size()) {
    throw Error(ErrorCode::InvalidParams, "target length " + std::to_string(target) + " outside [1, " +
                                              std::to_string(result.candidates.size()) + "] candidates");
  }
  const MatrixView view = extract_view(graph, result.candidates);

  if (algo == Algorithm::Simple) {
    Sequence sorted = simple_sort(view);
    sorted.resize(target);
    result.orderings.push_back(std::move(sorted));
    result.branch_count = 1;
    result.unique = true;
    return result;
  }

  OrderingOutcome outcome = branching_order(view, algo, target, branch_budget);
  // a recalled sequence must contain its cue; only matters when target < |candidates|
  for (Sequence& ordering : outcome.orderings) {
    const bool holds_context = std::all_of(ctx.symbols().begin(), ctx.symbols().end(), [&](SymbolId s) {
      return std::find(ordering.begin(), ordering.end(), s) != ordering.end();
    });
    if (holds_context) result.orderings.push_back(std::move(ordering));
  }
  if (result.orderings.empty()) {
    throw Error(ErrorCode::NoValidOrdering, "no validated ordering contains the whole context");
  }
  result.branch_count = outcome.branch_count;
  result.unique = result.orderings.size() == 1;
  return result;
}

}  // namespace ssakg
