#include <doctest.h>

#include <random>

#include "shiftforge/engine.hpp"
#include "shiftforge/kernels.hpp"

using namespace shiftforge;

TEST_CASE("bit kernels agree with the scalar reference") {
  std::mt19937_64 g(31);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 64u, 129u}) {
    std::vector<std::uint64_t> a(n), b(n), d1(n), d2(n);
    for (auto& v : a) v = g();
    for (auto& v : b) v = g() & g();
    d1 = a;
    d2 = a;
    kernels::scalar::bits_or(d1.data(), b.data(), n);
    kernels::bits_or(d2.data(), b.data(), n);
    CHECK(d1 == d2);
    kernels::scalar::bits_and(d1.data(), a.data(), b.data(), n);
    kernels::bits_and(d2.data(), a.data(), b.data(), n);
    CHECK(d1 == d2);
    std::vector<std::uint64_t> z(n, 0);
    CHECK_FALSE(kernels::bits_any(z.data(), n));
    if (n) {
      z[n - 1] = 1;
      CHECK(kernels::bits_any(z.data(), n));
      CHECK(kernels::scalar::bits_any(z.data(), n));
    }
  }
}

TEST_CASE("matvec agrees with the scalar reference") {
  std::mt19937_64 g(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 16u, 33u}) {
    std::vector<double> a(n * n), x(n), y1(n), y2(n);
    for (auto& v : a) v = u(g);
    for (auto& v : x) v = u(g);
    kernels::scalar::matvec(a.data(), x.data(), y1.data(), n);
    kernels::matvec(a.data(), x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-12));
  }
}

TEST_CASE("forcing the scalar path leaves results unchanged") {
  SubshiftHandle x(SftSpec::golden_mean());
  FiniteSet f = FiniteSet::interval(0, 40);
  auto before = count_patterns(x, f).count;
  double h_before = entropy_exact_1d(x);
  auto isa = kernels::active_isa();
  kernels::force_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  CHECK(count_patterns(x, f).count == before);
  CHECK(entropy_exact_1d(x) == doctest::Approx(h_before).epsilon(1e-12));
  kernels::force_isa(isa);
  CHECK(kernels::active_isa() == isa);
}
