#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "compartdb/kernels/fp_kernels.hpp"

using namespace compartdb;
using namespace compartdb::kernels;

namespace {

std::vector<std::uint32_t> random_vec(std::size_t n, std::uint32_t p,
                                      std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match direct modular arithmetic") {
  PrimeField f(kConfirmationPrime);
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 20; ++iter) {
    std::size_t n = 1 + rng() % 40;
    auto x = random_vec(n, f.p(), rng);
    auto y = random_vec(n, f.p(), rng);
    std::uint32_t c = 1 + std::uint32_t(rng() % (f.p() - 1));

    auto expect = y;
    for (std::size_t i = 0; i < n; ++i) {
      expect[i] = f.add(expect[i], f.mul(c, x[i]));
    }
    auto got = y;
    detail::axpy_mod_scalar(got.data(), x.data(), n, c, f);
    CHECK(got == expect);

    std::uint32_t dot = 0;
    for (std::size_t i = 0; i < n; ++i) dot = f.add(dot, f.mul(x[i], y[i]));
    CHECK(detail::dot_mod_scalar(x.data(), y.data(), n, f) == dot);
  }
}

#if defined(__x86_64__) || defined(_M_X64)

TEST_CASE("avx2 Mersenne kernels agree with the scalar reference") {
  if (!detail::avx2_available()) return;
  PrimeField f(kMersenne31);
  std::mt19937_64 rng(2);
  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 15u, 16u, 17u, 64u, 257u, 1000u}) {
    for (int iter = 0; iter < 10; ++iter) {
      auto x = random_vec(n, f.p(), rng);
      auto y = random_vec(n, f.p(), rng);
      std::uint32_t c = std::uint32_t(rng() % f.p());

      auto expect = y;
      detail::axpy_mod_scalar(expect.data(), x.data(), n, c, f);
      auto got = y;
      detail::axpy_mod_avx2_m31(got.data(), x.data(), n, c);
      CHECK(got == expect);

      auto se = y;
      detail::scale_mod_scalar(se.data(), n, c, f);
      auto sg = y;
      detail::scale_mod_avx2_m31(sg.data(), n, c);
      CHECK(sg == se);

      CHECK(detail::dot_mod_avx2_m31(x.data(), y.data(), n) ==
            detail::dot_mod_scalar(x.data(), y.data(), n, f));
    }
  }
}

TEST_CASE("avx2 kernels survive boundary values") {
  if (!detail::avx2_available()) return;
  PrimeField f(kMersenne31);
  const std::uint32_t top = f.p() - 1;
  std::vector<std::uint32_t> x(32, top), y(32, top);
  auto expect = y;
  detail::axpy_mod_scalar(expect.data(), x.data(), x.size(), top, f);
  auto got = y;
  detail::axpy_mod_avx2_m31(got.data(), x.data(), x.size(), top);
  CHECK(got == expect);
  CHECK(detail::dot_mod_avx2_m31(x.data(), y.data(), x.size()) ==
        detail::dot_mod_scalar(x.data(), y.data(), x.size(), f));

  std::vector<std::uint32_t> zeros(32, 0);
  got = zeros;
  detail::axpy_mod_avx2_m31(got.data(), x.data(), 32, 0);
  CHECK(got == zeros);
}

#endif  // x86_64

TEST_CASE("dispatch picks the Mersenne backend only where valid") {
  PrimeField mersenne(kMersenne31);
  PrimeField other(kConfirmationPrime);
  CHECK(std::string(active_backend(other)) == "scalar");
#if defined(__x86_64__) || defined(_M_X64)
  if (detail::avx2_available()) {
    CHECK(std::string(active_backend(mersenne)) == "avx2-m31");
  }
#endif
  // Entry points must produce canonical results regardless of backend.
  std::mt19937_64 rng(3);
  for (const PrimeField& f : {mersenne, other}) {
    auto x = random_vec(100, f.p(), rng);
    auto y = random_vec(100, f.p(), rng);
    std::uint32_t c = std::uint32_t(rng() % f.p());
    auto expect = y;
    detail::axpy_mod_scalar(expect.data(), x.data(), x.size(), c, f);
    auto got = y;
    axpy_mod(got.data(), x.data(), x.size(), c, f);
    CHECK(got == expect);
  }
}
