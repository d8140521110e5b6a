#pragma once

#include <cstdint>

// Analytic density / capacity model for a graph that stores transitive
// tournaments of length L over n nodes. Each stored sequence covers the
// fraction xi = L(L-1) / (n(n-1)) of node pairs, so after s uniformly random
// sequences the density is 1 - (1 - xi)^s, and the number of sequences that
// drive the graph to density d is log(1 - d) / log(1 - xi).
//
// All functions are pure and throw Error{InvalidParams} outside their domain.
// They work in long double: capacity(density_after(s)) loses about seven
// digits in double once 1 - d drops near 1e-9.
namespace ssakg::capacity {

using Real = long double;

inline constexpr Real kDefaultCriticalDensity = 0.5L;

Real xi(std::int64_t seq_len, std::int64_t node_count);

// d * n * (n - 1)
Real edges_from_density(Real density, std::int64_t node_count);

// Expected edges added by one more sequence under uniform overlap:
// (1 - d) * L * (L - 1). An expectation, not an exact count.
Real expected_new_edges(Real density, std::int64_t seq_len);

// d * (1 - xi) + xi
Real density_step(Real density, Real xi);

// 1 - (1 - xi)^s
Real density_after(std::int64_t sequences, Real xi);

// log(1 - d) / log(1 - xi); real-valued, callers floor for a count.
Real capacity(Real density, Real xi);

struct DensityModel {
  std::int64_t node_count = 0;
  std::int64_t seq_len = 0;
  Real critical_density = kDefaultCriticalDensity;

  DensityModel(std::int64_t n, std::int64_t len, Real d_crit = kDefaultCriticalDensity);

  Real xi() const;
  Real density_after(std::int64_t sequences) const;
  // Sequences storable before the critical density is reached.
  Real capacity() const;
};

}  // namespace ssakg::capacity
