#include "ssakg/graph.hpp"

#include <fstream>
#include <limits>
#include <string>

#include <json.hpp>

#include "ssakg/error.hpp"

namespace ssakg {

namespace {

constexpr std::size_t kMaxSequenceLength = std::size_t{std::numeric_limits<Weight>::max()} + 1;

}  // namespace

Graph::Graph(std::size_t node_count)
    : n_(node_count), adjacency_(node_count), symmetric_(node_count) {
  if (node_count < 2) {
    throw Error(ErrorCode::InvalidNodeCount, "graph needs at least 2 nodes, got " + std::to_string(node_count));
  }
  weights_.assign(n_ * n_, 0);
}

double Graph::density() const noexcept {
  return static_cast<double>(edges_) / (static_cast<double>(n_) * static_cast<double>(n_ - 1));
}

double Graph::symmetric_density() const noexcept {
  return 2.0 * static_cast<double>(pairs_) / (static_cast<double>(n_) * static_cast<double>(n_ - 1));
}

bool Graph::has_edge(SymbolId from, SymbolId to) const {
  if (from >= n_ || to >= n_) throw Error(ErrorCode::SymbolOutOfRange, "edge endpoint outside graph");
  return adjacency_.test(from, to);
}

Weight Graph::weight(SymbolId from, SymbolId to) const {
  if (from >= n_ || to >= n_) throw Error(ErrorCode::SymbolOutOfRange, "edge endpoint outside graph");
  return weights_[std::size_t{from} * n_ + to];
}

bool Graph::connected(SymbolId a, SymbolId b) const {
  if (a >= n_ || b >= n_) throw Error(ErrorCode::SymbolOutOfRange, "node outside graph");
  return symmetric_.test(a, b);
}

void validate_sequence(std::span<const SymbolId> sequence, std::size_t node_count) {
  if (sequence.size() < 2) {
    throw Error(ErrorCode::InvalidSequence, "sequence needs at least 2 elements");
  }
  if (sequence.size() > kMaxSequenceLength) {
    throw Error(ErrorCode::InvalidSequence, "sequence longer than the weight range allows");
  }
  std::vector<bool> seen(node_count, false);
  for (SymbolId s : sequence) {
    if (s >= node_count) {
      throw Error(ErrorCode::SymbolOutOfRange,
                  "symbol " + std::to_string(s) + " outside graph of " + std::to_string(node_count) + " nodes");
    }
    if (seen[s]) throw Error(ErrorCode::DuplicateElement, "symbol " + std::to_string(s) + " repeats in sequence");
    seen[s] = true;
  }
}

void Graph::add_edge(SymbolId from, SymbolId to, Weight w) {
  if (adjacency_.set(from, to)) {
    ++edges_;
    if (!adjacency_.test(to, from)) {
      ++pairs_;
      symmetric_.set(from, to);
      symmetric_.set(to, from);
    }
  }
  Weight& cell = weights_[std::size_t{from} * n_ + to];
  if (w > cell) cell = w;
}

void Graph::store_sequence(std::span<const SymbolId> sequence) {
  validate_sequence(sequence, n_);
  const std::size_t len = sequence.size();
  for (std::size_t i = 0; i + 1 < len; ++i) {
    // 0-based i is position i + 1, so the weight L - (i + 1)
    const auto w = static_cast<Weight>(len - 1 - i);
    for (std::size_t j = i + 1; j < len; ++j) add_edge(sequence[i], sequence[j], w);
  }
  ++stored_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < n_; ++u) {
    const auto row = adjacency_.row(u);
    for (std::size_t wi = 0; wi < row.size(); ++wi) {
      BitMatrix::Word bits = row[wi];
      while (bits != 0) {
        const auto v = wi * BitMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        out.push_back({static_cast<SymbolId>(u), static_cast<SymbolId>(v), weights_[u * n_ + v]});
      }
    }
  }
  return out;
}

Graph Graph::from_edges(std::size_t node_count, std::size_t stored_count, std::span<const Edge> edges) {
  Graph g(node_count);
  for (const Edge& e : edges) {
    if (e.from >= node_count || e.to >= node_count) {
      throw Error(ErrorCode::SymbolOutOfRange, "edge endpoint outside graph");
    }
    if (e.from == e.to) throw Error(ErrorCode::ParseError, "self-loop in edge list");
    if (e.weight == 0) throw Error(ErrorCode::ParseError, "edge with zero weight");
    if (g.adjacency_.test(e.from, e.to)) throw Error(ErrorCode::ParseError, "duplicate edge in edge list");
    g.add_edge(e.from, e.to, e.weight);
  }
  g.stored_ = stored_count;
  return g;
}

bool Graph::operator==(const Graph& other) const {
  return n_ == other.n_ && stored_ == other.stored_ && edges_ == other.edges_ && adjacency_ == other.adjacency_ &&
         weights_ == other.weights_;
}

void save_snapshot(const Graph& graph, const std::filesystem::path& path) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.from, e.to, e.weight});
  const nlohmann::json doc = {{"n", graph.node_count()}, {"stored_count", graph.stored_count()}, {"edges", edges}};
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << doc.dump() << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Graph load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto stored = doc.at("stored_count").get<std::size_t>();
    std::vector<Edge> edges;
    const auto& list = doc.at("edges");
    edges.reserve(list.size());
    for (const auto& item : list) {
      if (!item.is_array() || item.size() != 3) throw Error(ErrorCode::ParseError, "edge must be [u, v, w]");
      const auto w = item[2].get<std::uint64_t>();
      if (w > std::numeric_limits<Weight>::max()) throw Error(ErrorCode::ParseError, "edge weight out of range");
      edges.push_back({item[0].get<SymbolId>(), item[1].get<SymbolId>(), static_cast<Weight>(w)});
    }
    return Graph::from_edges(n, stored, edges);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace ssakg
