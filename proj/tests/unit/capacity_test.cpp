#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "ssakg/capacity.hpp"
#include "ssakg/error.hpp"

using namespace ssakg;
namespace cap = ssakg::capacity;

namespace {

bool invalid(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == ErrorCode::InvalidParams;
  }
  return false;
}

// Evaluated in long double by repeated squaring, independent of log1p/expm1.
long double pow_oracle(long double base, std::int64_t e) {
  long double r = 1.0L;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

TEST_CASE("xi") {
  CHECK(cap::xi(1000, 1000) == 1.0);
  CHECK(cap::xi(15, 1000) == doctest::Approx(210.0 / 999000.0).epsilon(1e-15));
  CHECK(cap::xi(15, 1000) == doctest::Approx(2.10210e-4).epsilon(1e-5));
  CHECK(cap::xi(2, 1000) == doctest::Approx(2.0 / 999000.0).epsilon(1e-15));
  CHECK(invalid([] { cap::xi(1, 1000); }));
  CHECK(invalid([] { cap::xi(1001, 1000); }));
}

TEST_CASE("edge and density helpers") {
  CHECK(cap::edges_from_density(1.0, 20) == 380.0);
  CHECK(cap::edges_from_density(0.0, 1000) == 0.0);
  CHECK(cap::edges_from_density(0.5, 1000) == 499500.0);
  CHECK(invalid([] { cap::edges_from_density(1.5, 20); }));
  CHECK(invalid([] { cap::edges_from_density(0.5, 1); }));

  CHECK(cap::expected_new_edges(0.0, 15) == 210.0);
  CHECK(cap::expected_new_edges(1.0, 15) == 0.0);
  CHECK(cap::expected_new_edges(0.5, 15) == 105.0);
  CHECK(invalid([] { cap::expected_new_edges(-0.1, 15); }));
  CHECK(invalid([] { cap::expected_new_edges(0.5, 1); }));

  const double x = cap::xi(15, 1000);
  CHECK(cap::density_step(0.0, x) == x);
  CHECK(cap::density_step(1.0, x) == 1.0);
  CHECK(invalid([&] { cap::density_step(0.5, 0.0); }));
  CHECK(invalid([&] { cap::density_step(2.0, x); }));
}

TEST_CASE("density after s sequences") {
  const double x = cap::xi(15, 1000);
  CHECK(cap::density_after(0, x) == 0.0);
  CHECK(cap::density_after(1, x) == doctest::Approx(x).epsilon(1e-14));
  const double expected = static_cast<double>(1.0L - pow_oracle(1.0L - 210.0L / 999000.0L, 1000));
  CHECK(cap::density_after(1000, x) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(cap::density_after(1000, x) == doctest::Approx(0.18960).epsilon(1e-4));
  CHECK(invalid([&] { cap::density_after(-1, x); }));

  double d = 0.0;
  for (int i = 0; i < 1000; ++i) d = cap::density_step(d, x);
  CHECK(d == doctest::Approx(cap::density_after(1000, x)).epsilon(1e-12));
}

TEST_CASE("capacity") {
  const double x = cap::xi(15, 1000);
  CHECK(cap::capacity(x, x) == doctest::Approx(1.0).epsilon(1e-12));
  const double c = cap::capacity(0.5, x);
  const double oracle = static_cast<double>(std::log(0.5L) / std::log(1.0L - 210.0L / 999000.0L));
  CHECK(c == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(std::floor(c) == 3297.0);
  CHECK(invalid([&] { cap::capacity(0.0, x); }));
  CHECK(invalid([&] { cap::capacity(1.0, x); }));
  CHECK(invalid([&] { cap::capacity(0.5, 0.0); }));
  CHECK(invalid([&] { cap::capacity(0.5, 1.0); }));
}

TEST_CASE("capacity inverts density_after") {
  const auto x15 = cap::xi(15, 1000);
  for (std::int64_t s = 1; s <= 100000; s += 7) {
    CHECK(std::abs(cap::capacity(cap::density_after(s, x15), x15) - s) <= 1e-9L * s);
  }

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> s_dist(1, 100000);
  std::uniform_real_distribution<double> log_xi(std::log(1e-6), std::log(0.1));
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t s = s_dist(rng);
    const long double x = std::exp(log_xi(rng));
    const long double d = cap::density_after(s, x);
    // Past this point d itself carries too few digits of 1 - d to recover s.
    if (1.0L - d < 1e-10L) continue;
    const long double back = cap::capacity(d, x);
    CHECK(std::abs(back - s) <= 1e-9L * s);
  }
}

TEST_CASE("recurrence matches the closed form") {
  for (double x : {1e-6, 2.10210e-4, 1e-3, 0.01, 0.1}) {
    double d = 0.0;
    for (std::int64_t s = 1; s <= 10000; ++s) {
      d = cap::density_step(d, x);
      if (s % 97 == 0 || s == 10000) CHECK(std::abs(d - cap::density_after(s, x)) <= 1e-12);
    }
  }
}

TEST_CASE("capacity grows quadratically with the node count") {
  const double c2000 = cap::capacity(0.5, cap::xi(15, 2000));
  const double c4000 = cap::capacity(0.5, cap::xi(15, 4000));
  const double ratio = c4000 / c2000;
  CHECK(ratio >= 3.9);
  CHECK(ratio <= 4.1);
}

TEST_CASE("density model bundles the parameters") {
  const cap::DensityModel m(1000, 15);
  CHECK(m.critical_density == 0.5);
  CHECK(m.xi() == cap::xi(15, 1000));
  CHECK(std::floor(m.capacity()) == 3297.0);
  CHECK(m.density_after(1000) == cap::density_after(1000, m.xi()));
  CHECK(invalid([] { cap::DensityModel(1000, 1); }));
  CHECK(invalid([] { cap::DensityModel(1000, 15, 1.0); }));
}
