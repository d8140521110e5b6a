#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ssakg/bit_matrix.hpp"
#include "ssakg/graph.hpp"

namespace ssakg {

enum class Algorithm { Simple, Node, Enhanced, Weighted };

std::string_view to_string(Algorithm algo) noexcept;
Algorithm parse_algorithm(std::string_view name);  // throws InvalidParams
inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Simple, Algorithm::Node, Algorithm::Enhanced,
                                               Algorithm::Weighted};

inline constexpr std::size_t kDefaultBranchBudget = 10'000;

// Directed sub-matrix of the graph over a candidate symbol set. Rows and
// columns follow the ascending symbol order.
class MatrixView {
 public:
  // weights is m*m row-major; adjacency is derived as weights > 0.
  MatrixView(std::vector<SymbolId> symbols, std::vector<Weight> weights);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<SymbolId>& symbols() const noexcept { return symbols_; }
  const BitMatrix& adjacency() const noexcept { return adj_; }
  bool has_edge(std::size_t row, std::size_t col) const noexcept { return adj_.test(row, col); }
  Weight weight(std::size_t row, std::size_t col) const noexcept { return wts_[row * size() + col]; }
  std::optional<std::size_t> index_of(SymbolId symbol) const noexcept;

 private:
  std::vector<SymbolId> symbols_;
  BitMatrix adj_;
  std::vector<Weight> wts_;
};

// Sub-matrix of `graph` over `symbols` (any order, duplicates rejected).
MatrixView extract_view(const Graph& graph, std::span<const SymbolId> symbols);

struct OrderingOutcome {
  std::vector<Sequence> orderings;  // discovery order of the depth-first search
  std::size_t branch_count = 0;     // completed root-to-leaf explorations
  std::size_t explored = 0;         // search-tree nodes visited
};

// Baseline: rows by descending non-zero count, ties by ascending symbol. No
// elimination and no validation.
Sequence simple_sort(const MatrixView& view);

// Depth-first elimination search. At every step the algorithm's priority rule
// picks the branch set among the remaining rows of the shrinking matrix:
//   node      rows with the largest non-zero count;
//   enhanced  of those, rows with the largest weight sum;
//   weighted  of those, rows with the most cells holding the positional weight
//             expected for the step (target_len - step).
// The chosen row is removed and the matrix shrinks to that row's successors,
// since nothing else can follow it. A branch ends after target_len picks, or
// earlier when no row is left (a dead end, still counted as a branch). Full
// prefixes must form a transitive tournament to be reported. Ties are explored
// in ascending symbol order.
//
// Throws NoValidOrdering when nothing validates and AmbiguityOverflow when the
// number of completed branches exceeds branch_budget.
OrderingOutcome branching_order(const MatrixView& view, Algorithm algo, std::size_t target_len,
                                std::size_t branch_budget = kDefaultBranchBudget);

// True iff every earlier element has an edge to every later element.
bool validate_tournament(const MatrixView& view, std::span<const SymbolId> ordering);

// Elimination path: 1-based row indices into successively smaller matrices.
// [4, 3, 3, 2, 1] removes label 4 from [1..5], then label 3 from [1, 2, 3, 5],
// and so on, giving the permutation [4, 3, 5, 2, 1].
using EliminationPath = std::vector<std::size_t>;

std::vector<std::size_t> path_to_permutation(std::span<const std::size_t> path);
EliminationPath permutation_to_path(std::span<const std::size_t> permutation);

}  // namespace ssakg
