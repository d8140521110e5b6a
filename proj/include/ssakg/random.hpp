#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ssakg {

// Reproducible generator. std::mt19937_64's output sequence is fixed by the
// standard; bounded draws use plain rejection sampling instead of
// std::uniform_int_distribution, whose algorithm varies between standard
// libraries. Reports record kRngName so results can be matched to the
// generator that produced them.
class Rng {
 public:
  static constexpr std::string_view kRngName = "mt19937_64+rejection/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Child seed for an independent stream, derived from a master seed and a
// tuple of indices.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) noexcept;

}  // namespace ssakg
