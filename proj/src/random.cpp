#include "ssakg/random.hpp"

namespace ssakg {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Largest multiple of bound that fits; values at or above it are redrawn.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

}  // namespace ssakg
