#include "ssakg/capacity.hpp"

#include <cmath>
#include <string>

#include "ssakg/error.hpp"

namespace ssakg::capacity {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidParams, what); }

void check_fraction(Real v, const char* name) {
  if (!(v >= 0.0L && v <= 1.0L)) invalid(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

Real xi(std::int64_t seq_len, std::int64_t node_count) {
  if (seq_len < 2) invalid("sequence length must be at least 2");
  if (seq_len > node_count) invalid("sequence length cannot exceed node count");
  const auto l = static_cast<Real>(seq_len);
  const auto n = static_cast<Real>(node_count);
  return (l * (l - 1.0L)) / (n * (n - 1.0L));
}

Real edges_from_density(Real density, std::int64_t node_count) {
  check_fraction(density, "density");
  if (node_count < 2) invalid("node count must be at least 2");
  const auto n = static_cast<Real>(node_count);
  return density * n * (n - 1.0L);
}

Real expected_new_edges(Real density, std::int64_t seq_len) {
  check_fraction(density, "density");
  if (seq_len < 2) invalid("sequence length must be at least 2");
  const auto l = static_cast<Real>(seq_len);
  return (1.0L - density) * l * (l - 1.0L);
}

Real density_step(Real density, Real xi_value) {
  check_fraction(density, "density");
  if (!(xi_value > 0.0L && xi_value <= 1.0L)) invalid("xi must lie in (0, 1]");
  return density * (1.0L - xi_value) + xi_value;
}

Real density_after(std::int64_t sequences, Real xi_value) {
  if (sequences < 0) invalid("sequence count must be non-negative");
  check_fraction(xi_value, "xi");
  if (xi_value == 1.0L) return sequences == 0 ? 0.0L : 1.0L;
  return -std::expm1(static_cast<Real>(sequences) * std::log1p(-xi_value));
}

Real capacity(Real density, Real xi_value) {
  if (!(density > 0.0L && density < 1.0L)) invalid("density must lie in (0, 1)");
  if (!(xi_value > 0.0L && xi_value < 1.0L)) invalid("xi must lie in (0, 1)");
  return std::log1p(-density) / std::log1p(-xi_value);
}

DensityModel::DensityModel(std::int64_t n, std::int64_t len, Real d_crit)
    : node_count(n), seq_len(len), critical_density(d_crit) {
  capacity::xi(len, n);
  if (!(d_crit > 0.0L && d_crit < 1.0L)) invalid("critical density must lie in (0, 1)");
}

Real DensityModel::xi() const { return capacity::xi(seq_len, node_count); }

Real DensityModel::density_after(std::int64_t sequences) const {
  return capacity::density_after(sequences, xi());
}

Real DensityModel::capacity() const { return capacity::capacity(critical_density, xi()); }

}  // namespace ssakg::capacity
