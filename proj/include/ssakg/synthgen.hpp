#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "ssakg/graph.hpp"

namespace ssakg {

// Flat-distribution synthetic workload: sequence lengths uniform in
// [length_min, length_max], elements drawn uniformly without replacement
// from [0, node_count).
struct GenSpec {
  std::size_t node_count = 0;
  std::size_t length_min = 0;
  std::size_t length_max = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

std::vector<Sequence> gen_sequences(const GenSpec& spec);

// Uniform random subset of `size` distinct elements of `sequence`, returned in
// ascending order.
std::vector<SymbolId> draw_context(std::span<const SymbolId> sequence, std::size_t size, std::uint64_t seed);

// Sequence list file: a JSON array of integer arrays.
void save_sequences(const std::vector<Sequence>& sequences, const std::filesystem::path& path);
std::vector<Sequence> load_sequences(const std::filesystem::path& path);

}  // namespace ssakg
