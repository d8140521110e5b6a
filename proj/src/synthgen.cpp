#include "ssakg/synthgen.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <string>

#include <json.hpp>

#include "ssakg/error.hpp"
#include "ssakg/random.hpp"

namespace ssakg {

void GenSpec::validate() const {
  if (length_min < 2) throw Error(ErrorCode::InvalidParams, "length_min must be at least 2");
  if (length_min > length_max) throw Error(ErrorCode::InvalidParams, "length_min exceeds length_max");
  if (length_max > node_count) throw Error(ErrorCode::InvalidParams, "length_max exceeds node count");
  if (count < 1) throw Error(ErrorCode::InvalidParams, "count must be at least 1");
}

std::vector<Sequence> gen_sequences(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<SymbolId> pool(spec.node_count);
  std::vector<Sequence> out;
  out.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    const std::size_t len = spec.length_min + rng.below(spec.length_max - spec.length_min + 1);
    std::iota(pool.begin(), pool.end(), SymbolId{0});
    // partial Fisher-Yates: the first len slots become the sample, in order
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    out.emplace_back(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return out;
}

std::vector<SymbolId> draw_context(std::span<const SymbolId> sequence, std::size_t size, std::uint64_t seed) {
  if (size < 1 || size > sequence.size()) {
    throw Error(ErrorCode::InvalidParams, "context size " + std::to_string(size) + " outside [1, " +
                                              std::to_string(sequence.size()) + "]");
  }
  Rng rng(seed);
  std::vector<SymbolId> pool(sequence.begin(), sequence.end());
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void save_sequences(const std::vector<Sequence>& sequences, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << nlohmann::json(sequences).dump() << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<Sequence> load_sequences(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in).get<std::vector<Sequence>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace ssakg
