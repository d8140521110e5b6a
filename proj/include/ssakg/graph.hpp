#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ssakg/bit_matrix.hpp"

namespace ssakg {

using SymbolId = std::uint32_t;
using Weight = std::uint16_t;
using Sequence = std::vector<SymbolId>;

struct Edge {
  SymbolId from = 0;
  SymbolId to = 0;
  Weight weight = 0;

  bool operator==(const Edge&) const = default;
};

// Sequential structural associative knowledge graph.
//
// Every stored sequence s_1..s_L is written as a transitive tournament:
// s_i -> s_j for all i < j. The directed adjacency A and the weight matrix W
// are dense; W[u][v] > 0 exactly where A[u][v] is set. The weight of an edge
// written from position i (1-based) of a length-L sequence is L - i, and
// overlapping writes keep the maximum.
//
// The symmetric view S = A | A^T is kept alongside A because context
// retrieval works on it.
//
// Single writer while storing; concurrent readers are fine once storage is
// finished.
class Graph {
 public:
  explicit Graph(std::size_t node_count);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t stored_count() const noexcept { return stored_; }
  std::size_t edge_count() const noexcept { return edges_; }

  // edge_count / (n (n - 1))
  double density() const noexcept;

  // Fraction of unordered node pairs joined in either direction, i.e. the
  // density of S. This is the quantity the analytic density model tracks.
  double symmetric_density() const noexcept;
  std::size_t connected_pair_count() const noexcept { return pairs_; }

  bool has_edge(SymbolId from, SymbolId to) const;
  Weight weight(SymbolId from, SymbolId to) const;
  bool connected(SymbolId a, SymbolId b) const;

  const BitMatrix& adjacency() const noexcept { return adjacency_; }
  const BitMatrix& symmetric() const noexcept { return symmetric_; }

  // Throws InvalidSequence, DuplicateElement or SymbolOutOfRange; the graph is
  // left untouched on error.
  void store_sequence(std::span<const SymbolId> sequence);

  // Edges sorted by (from, to).
  std::vector<Edge> edges() const;

  static Graph from_edges(std::size_t node_count, std::size_t stored_count, std::span<const Edge> edges);

  bool operator==(const Graph& other) const;

 private:
  void add_edge(SymbolId from, SymbolId to, Weight w);

  std::size_t n_;
  std::size_t stored_ = 0;
  std::size_t edges_ = 0;
  std::size_t pairs_ = 0;
  BitMatrix adjacency_;
  BitMatrix symmetric_;
  std::vector<Weight> weights_;
};

// Checks the sequence invariants against a graph of `node_count` nodes.
void validate_sequence(std::span<const SymbolId> sequence, std::size_t node_count);

// Snapshot file: {"n": int, "stored_count": int, "edges": [[u, v, w], ...]}
// with edges sorted by (u, v).
void save_snapshot(const Graph& graph, const std::filesystem::path& path);
Graph load_snapshot(const std::filesystem::path& path);

}  // namespace ssakg
