#pragma once

// Brute-force reference implementations. They read the graph only through
// has_edge / weight / connected and share no code with the library search.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ssakg/graph.hpp"
#include "ssakg/ordering.hpp"

namespace oracle {

using ssakg::Graph;
using ssakg::Sequence;
using ssakg::SymbolId;

// W[u][v] recomputed from positions: the largest L - i (1-based i) over all
// stored sequences where u precedes v.
inline std::map<std::pair<SymbolId, SymbolId>, unsigned> weights(const std::vector<Sequence>& stored) {
  std::map<std::pair<SymbolId, SymbolId>, unsigned> w;
  for (const auto& s : stored) {
    const unsigned len = static_cast<unsigned>(s.size());
    for (unsigned i = 0; i < len; ++i) {
      for (unsigned j = i + 1; j < len; ++j) {
        auto& cell = w[{s[i], s[j]}];
        cell = std::max(cell, len - (i + 1));
      }
    }
  }
  return w;
}

inline bool is_tournament(const Graph& g, const Sequence& order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (!g.has_edge(order[i], order[j])) return false;
    }
  }
  return true;
}

// Every length-len arrangement of distinct symbols from `pool` that forms a
// transitive tournament in g.
inline std::set<Sequence> valid_orderings(const Graph& g, std::vector<SymbolId> pool, std::size_t len) {
  std::set<Sequence> out;
  Sequence cur;
  std::vector<bool> used(pool.size(), false);
  std::function<void()> rec = [&] {
    if (cur.size() == len) {
      if (is_tournament(g, cur)) out.insert(cur);
      return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(pool[i]);
      rec();
      cur.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

// Scan of all n nodes against the candidate definition.
inline std::vector<SymbolId> candidates(const Graph& g, const std::vector<SymbolId>& ctx) {
  std::vector<SymbolId> out;
  for (SymbolId v = 0; v < g.node_count(); ++v) {
    bool in_ctx = std::find(ctx.begin(), ctx.end(), v) != ctx.end();
    bool all = true;
    for (SymbolId u : ctx) {
      if (u == v) continue;
      if (!g.has_edge(u, v) && !g.has_edge(v, u)) all = false;
    }
    if (in_ctx || all) out.push_back(v);
  }
  return out;
}

// Orderings the priority rule can reach, each checked as a tournament.
// Sets of remaining symbols are plain vectors; after a pick only its
// successors stay.
inline std::set<Sequence> reachable_orderings(const Graph& g, const std::vector<SymbolId>& pool, ssakg::Algorithm algo,
                                              std::size_t len) {
  std::set<Sequence> out;
  Sequence prefix;
  std::function<void(std::vector<SymbolId>)> rec = [&](std::vector<SymbolId> rest) {
    if (prefix.size() == len) {
      if (is_tournament(g, prefix)) out.insert(prefix);
      return;
    }
    auto count = [&](SymbolId r) {
      std::size_t c = 0;
      for (SymbolId x : rest) c += g.has_edge(r, x) ? 1 : 0;
      return c;
    };
    auto wsum = [&](SymbolId r) {
      std::size_t c = 0;
      for (SymbolId x : rest) c += g.weight(r, x);
      return c;
    };
    const std::size_t expected = len - (prefix.size() + 1);
    auto hits = [&](SymbolId r) {
      std::size_t c = 0;
      for (SymbolId x : rest) c += (g.has_edge(r, x) && g.weight(r, x) == expected) ? 1 : 0;
      return c;
    };
    std::vector<SymbolId> pick;
    std::size_t best = 0;
    for (SymbolId r : rest) best = std::max(best, count(r));
    for (SymbolId r : rest) {
      if (count(r) == best) pick.push_back(r);
    }
    if (algo != ssakg::Algorithm::Node && pick.size() > 1) {
      auto score = algo == ssakg::Algorithm::Enhanced ? std::function<std::size_t(SymbolId)>(wsum)
                                                      : std::function<std::size_t(SymbolId)>(hits);
      std::size_t top = 0;
      for (SymbolId r : pick) top = std::max(top, score(r));
      std::erase_if(pick, [&](SymbolId r) { return score(r) != top; });
    }
    for (SymbolId r : pick) {
      std::vector<SymbolId> next;
      for (SymbolId x : rest) {
        if (g.has_edge(r, x)) next.push_back(x);
      }
      prefix.push_back(r);
      rec(next);
      prefix.pop_back();
    }
  };
  rec(pool);
  return out;
}

// Random distinct-element sequence over [0, n).
inline Sequence random_sequence(std::mt19937_64& rng, std::size_t n, std::size_t len) {
  std::vector<SymbolId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<SymbolId>(i);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(len);
  return all;
}

}  // namespace oracle
