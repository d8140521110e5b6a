#include "ssakg/ordering.hpp"

#include <algorithm>
#include <string>

#include "ssakg/error.hpp"

namespace ssakg {

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Simple: return "simple";
    case Algorithm::Node: return "node";
    case Algorithm::Enhanced: return "enhanced";
    case Algorithm::Weighted: return "weighted";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  throw Error(ErrorCode::InvalidParams,
              "unknown ordering algorithm '" + std::string(name) + "' (expected simple, node, enhanced or weighted)");
}

MatrixView::MatrixView(std::vector<SymbolId> symbols, std::vector<Weight> weights)
    : symbols_(std::move(symbols)), adj_(symbols_.size()), wts_(std::move(weights)) {
  const std::size_t m = symbols_.size();
  if (wts_.size() != m * m) throw Error(ErrorCode::InvalidParams, "weight matrix does not match symbol count");
  if (!std::is_sorted(symbols_.begin(), symbols_.end()) ||
      std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end()) {
    throw Error(ErrorCode::InvalidParams, "matrix view symbols must be strictly ascending");
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (wts_[r * m + r] != 0) throw Error(ErrorCode::InvalidParams, "matrix view diagonal must be zero");
    for (std::size_t c = 0; c < m; ++c) {
      if (wts_[r * m + c] > 0) adj_.set(r, c);
    }
  }
}

std::optional<std::size_t> MatrixView::index_of(SymbolId symbol) const noexcept {
  const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end() || *it != symbol) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

MatrixView extract_view(const Graph& graph, std::span<const SymbolId> symbols) {
  std::vector<SymbolId> sorted(symbols.begin(), symbols.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidParams, "duplicate symbol in view");
  }
  const std::size_t m = sorted.size();
  std::vector<Weight> weights(m * m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (r != c) weights[r * m + c] = graph.weight(sorted[r], sorted[c]);
    }
  }
  return MatrixView(std::move(sorted), std::move(weights));
}

Sequence simple_sort(const MatrixView& view) {
  std::vector<std::size_t> rows(view.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<std::size_t> counts(view.size());
  for (std::size_t i = 0; i < rows.size(); ++i) counts[i] = view.adjacency().row_count(i);
  // rows are already in ascending symbol order, so a stable sort keeps ties that way
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  Sequence out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(view.symbols()[r]);
  return out;
}

namespace {

class EliminationSearch {
 public:
  EliminationSearch(const MatrixView& view, Algorithm algo, std::size_t target_len, std::size_t budget)
      : view_(view), algo_(algo), target_(target_len), budget_(budget), remaining_(view.adjacency().words_per_row(), 0) {
    for (std::size_t i = 0; i < view.size(); ++i) {
      remaining_[i / BitMatrix::kWordBits] |= BitMatrix::Word{1} << (i % BitMatrix::kWordBits);
    }
    prefix_.reserve(target_len);
  }

  OrderingOutcome run() {
    descend();
    return std::move(outcome_);
  }

 private:
  bool remains(std::size_t i) const noexcept {
    return (remaining_[i / BitMatrix::kWordBits] >> (i % BitMatrix::kWordBits)) & 1U;
  }

  // Keeps the rows in `rows` that attain the maximum of score(row).
  template <typename Score>
  static void keep_max(std::vector<std::size_t>& rows, Score score) {
    std::vector<std::size_t> best;
    std::size_t best_score = 0;
    for (std::size_t r : rows) {
      const std::size_t s = score(r);
      if (best.empty() || s > best_score) {
        best.assign(1, r);
        best_score = s;
      } else if (s == best_score) {
        best.push_back(r);
      }
    }
    rows = std::move(best);
  }

  std::vector<std::size_t> prioritize() const {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < view_.size(); ++r) {
      if (remains(r)) rows.push_back(r);
    }
    keep_max(rows, [&](std::size_t r) { return view_.adjacency().row_count_masked(r, remaining_); });
    if (rows.size() < 2) return rows;

    if (algo_ == Algorithm::Enhanced) {
      keep_max(rows, [&](std::size_t r) {
        std::size_t sum = 0;
        for (std::size_t c = 0; c < view_.size(); ++c) {
          if (remains(c)) sum += view_.weight(r, c);
        }
        return sum;
      });
    } else if (algo_ == Algorithm::Weighted) {
      // position (1-based) being filled is prefix_.size() + 1
      const std::size_t expected = target_ - (prefix_.size() + 1);
      keep_max(rows, [&](std::size_t r) {
        std::size_t hits = 0;
        for (std::size_t c = 0; c < view_.size(); ++c) {
          if (remains(c) && view_.has_edge(r, c) && view_.weight(r, c) == expected) ++hits;
        }
        return hits;
      });
    }
    return rows;
  }

  bool prefix_is_tournament() const noexcept {
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
      for (std::size_t j = i + 1; j < prefix_.size(); ++j) {
        if (!view_.has_edge(prefix_[i], prefix_[j])) return false;
      }
    }
    return true;
  }

  void finish_branch() {
    if (++outcome_.branch_count > budget_) {
      throw Error(ErrorCode::AmbiguityOverflow, "more than " + std::to_string(budget_) + " orderings explored over " +
                                                    std::to_string(view_.size()) + " candidates");
    }
  }

  void descend() {
    ++outcome_.explored;
    if (prefix_.size() == target_) {
      finish_branch();
      if (prefix_is_tournament()) {
        Sequence ordering;
        ordering.reserve(prefix_.size());
        for (std::size_t r : prefix_) ordering.push_back(view_.symbols()[r]);
        outcome_.orderings.push_back(std::move(ordering));
      }
      return;
    }
    const std::vector<std::size_t> branches = prioritize();
    if (branches.empty()) {
      finish_branch();  // dead end: nothing left that follows the whole prefix
      return;
    }
    const std::vector<BitMatrix::Word> saved = remaining_;
    for (std::size_t r : branches) {
      // only successors of r can follow it
      const auto row = view_.adjacency().row(r);
      for (std::size_t w = 0; w < remaining_.size(); ++w) remaining_[w] = saved[w] & row[w];
      prefix_.push_back(r);
      descend();
      prefix_.pop_back();
    }
    remaining_ = saved;
  }

  const MatrixView& view_;
  Algorithm algo_;
  std::size_t target_;
  std::size_t budget_;
  std::vector<BitMatrix::Word> remaining_;
  std::vector<std::size_t> prefix_;
  OrderingOutcome outcome_;
};

}  // namespace

OrderingOutcome branching_order(const MatrixView& view, Algorithm algo, std::size_t target_len,
                                std::size_t branch_budget) {
  if (algo == Algorithm::Simple) {
    throw Error(ErrorCode::InvalidParams, "simple sort is not a branching algorithm");
  }
  if (target_len < 1 || target_len > view.size()) {
    throw Error(ErrorCode::InvalidParams, "target length " + std::to_string(target_len) + " outside [1, " +
                                              std::to_string(view.size()) + "]");
  }
  if (branch_budget < 1) throw Error(ErrorCode::InvalidParams, "branch budget must be at least 1");

  OrderingOutcome outcome = EliminationSearch(view, algo, target_len, branch_budget).run();
  if (outcome.orderings.empty()) {
    throw Error(ErrorCode::NoValidOrdering, std::to_string(outcome.branch_count) +
                                                " branches explored, none forms a transitive tournament");
  }
  return outcome;
}

bool validate_tournament(const MatrixView& view, std::span<const SymbolId> ordering) {
  std::vector<std::size_t> rows;
  rows.reserve(ordering.size());
  std::vector<bool> used(view.size(), false);
  for (SymbolId s : ordering) {
    const auto idx = view.index_of(s);
    if (!idx) throw Error(ErrorCode::InvalidParams, "symbol " + std::to_string(s) + " is not in the view");
    if (used[*idx]) throw Error(ErrorCode::InvalidParams, "symbol " + std::to_string(s) + " repeats in ordering");
    used[*idx] = true;
    rows.push_back(*idx);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (!view.has_edge(rows[i], rows[j])) return false;
    }
  }
  return true;
}

std::vector<std::size_t> path_to_permutation(std::span<const std::size_t> path) {
  const std::size_t m = path.size();
  std::vector<std::size_t> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = i + 1;
  std::vector<std::size_t> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t idx = path[k];
    if (idx < 1 || idx > labels.size()) {
      throw Error(ErrorCode::MalformedPath, "index " + std::to_string(idx) + " at step " + std::to_string(k + 1) +
                                                " outside [1, " + std::to_string(labels.size()) + "]");
    }
    out.push_back(labels[idx - 1]);
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(idx - 1));
  }
  return out;
}

EliminationPath permutation_to_path(std::span<const std::size_t> permutation) {
  const std::size_t m = permutation.size();
  std::vector<std::size_t> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = i + 1;
  EliminationPath path;
  path.reserve(m);
  for (std::size_t label : permutation) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw Error(ErrorCode::MalformedPath, "label " + std::to_string(label) + " is not a remaining label of 1.." +
                                                std::to_string(m));
    }
    path.push_back(static_cast<std::size_t>(it - labels.begin()) + 1);
    labels.erase(it);
  }
  return path;
}

}  // namespace ssakg
