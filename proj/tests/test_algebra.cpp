#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "compartdb/fp.hpp"
#include "compartdb/fp_linalg.hpp"
#include "compartdb/poly.hpp"

using namespace compartdb;

namespace {

const MonomialOrder kOrd = MonomialOrder::Grevlex;

template <class R>
Poly<typename R::Elem> random_poly(const R& ring, int nvars,
                                   std::mt19937_64& rng) {
  std::vector<Term<typename R::Elem>> terms;
  int nterms = 1 + int(rng() % 5);
  for (int t = 0; t < nterms; ++t) {
    Monomial m;
    for (int v = 0; v < nvars; ++v) {
      m.exps[v] = std::uint16_t(rng() % 3);
      m.degree += m.exps[v];
    }
    terms.push_back({m, ring.from_int(long(rng() % 19) - 9)});
  }
  return make_poly(ring, kOrd, nvars, std::move(terms));
}

}  // namespace

TEST_CASE("rationals stay normalized") {
  Rational r = Rational(3) / Rational(-6);
  CHECK(numerator(r) == -1);
  CHECK(denominator(r) == 2);
  PrimeField f(kDefaultPrime);
  CHECK(rational_mod(Rational(1, 2), f) == f.mul(1, f.inv(2)));
  CHECK(rational_mod(Rational(-3), f) == f.p() - 3);
}

TEST_CASE("prime field arithmetic") {
  CHECK(is_prime_u32(kDefaultPrime));
  CHECK(is_prime_u32(kConfirmationPrime));
  CHECK_FALSE(is_prime_u32(kDefaultPrime - 1));
  CHECK_THROWS_AS(PrimeField(2147483646u), std::invalid_argument);

  PrimeField f(kConfirmationPrime);
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 200; ++iter) {
    std::uint64_t x = rng() >> 2;  // < 2^62
    CHECK(f.reduce64(x) == x % f.p());
  }
  for (int iter = 0; iter < 50; ++iter) {
    std::uint32_t a = 1 + std::uint32_t(rng() % (f.p() - 1));
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(a, f.p() - 1) == 1);  // Fermat
    CHECK(f.add(a, f.neg(a)) == 0);
  }
  CHECK(f.from_int64(-1) == f.p() - 1);
}

TEST_CASE("poly arithmetic on the worked examples") {
  FpRing ring(kDefaultPrime);
  // variables: a=0, b=1
  auto a = poly_var(ring, 2, 0);
  auto b = poly_var(ring, 2, 1);

  auto prod = poly_mul(ring, kOrd, poly_add(ring, kOrd, a, b),
                       poly_sub(ring, kOrd, a, b));
  auto a2 = poly_var(ring, 2, 0, 2);
  auto b2 = poly_var(ring, 2, 1, 2);
  CHECK(prod == poly_sub(ring, kOrd, a2, b2));  // (a+b)(a-b) = a^2 - b^2

  // d/da (a*b + a^2) = b + 2a
  auto f = poly_add(ring, kOrd, poly_mul(ring, kOrd, a, b), a2);
  auto df = poly_derivative(ring, f, 0);
  auto expected = poly_add(
      ring, kOrd, b, poly_mul_term(ring, a, Monomial::one(), ring.from_int(2)));
  CHECK(df == expected);

  // evaluate(a*b, a=2, b=3) = 6
  std::vector<std::uint32_t> point{2, 3};
  CHECK(poly_evaluate(ring, poly_mul(ring, kOrd, a, b),
                      std::span<const std::uint32_t>(point)) == 6);
}

TEST_CASE("poly arithmetic over rationals") {
  RationalRing ring;
  auto a = poly_var(ring, 2, 0);
  auto half_b = poly_mul_term(ring, poly_var(ring, 2, 1), Monomial::one(),
                              Rational(1, 2));
  auto sum = poly_add(ring, kOrd, a, half_b);
  auto twice = poly_add(ring, kOrd, sum, sum);
  CHECK(poly_to_string(ring, twice, std::vector<std::string>{"a", "b"}) ==
        "2*a + b");

  std::vector<Rational> point{Rational(1, 3), Rational(6)};
  CHECK(poly_evaluate(ring, sum, std::span<const Rational>(point)) ==
        Rational(10, 3));
}

TEST_CASE("partial substitution keeps the remaining variables symbolic") {
  FpRing ring(kDefaultPrime);
  auto a = poly_var(ring, 2, 0);
  auto b = poly_var(ring, 2, 1);
  auto f = poly_add(ring, kOrd, poly_mul(ring, kOrd, a, b), a);  // ab + a
  std::vector<std::optional<std::uint32_t>> point{std::nullopt, 3u};
  auto g = poly_substitute(ring, kOrd, f, std::span(point));
  // expect 4a
  CHECK(g == poly_mul_term(ring, a, Monomial::one(), 4u));
}

TEST_CASE("arity and modulus mismatches are rejected") {
  FpRing ring(kDefaultPrime);
  FpRing other(kConfirmationPrime);
  auto a2 = poly_var(ring, 2, 0);
  auto a3 = poly_var(ring, 3, 0);
  CHECK_THROWS_AS(poly_add(ring, kOrd, a2, a3), std::invalid_argument);
  auto b2 = poly_var(other, 2, 0);
  CHECK_THROWS_AS(poly_add(ring, kOrd, a2, b2), std::invalid_argument);
}

TEST_CASE("ring axioms hold on random polynomials") {
  FpRing ring(kDefaultPrime);
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 60; ++iter) {
    int nvars = 2 + int(rng() % 3);
    auto f = random_poly(ring, nvars, rng);
    auto g = random_poly(ring, nvars, rng);
    auto h = random_poly(ring, nvars, rng);

    CHECK(poly_add(ring, kOrd, f, g) == poly_add(ring, kOrd, g, f));
    CHECK(poly_mul(ring, kOrd, f, g) == poly_mul(ring, kOrd, g, f));
    CHECK(poly_mul(ring, kOrd, poly_mul(ring, kOrd, f, g), h) ==
          poly_mul(ring, kOrd, f, poly_mul(ring, kOrd, g, h)));
    CHECK(poly_mul(ring, kOrd, f, poly_add(ring, kOrd, g, h)) ==
          poly_add(ring, kOrd, poly_mul(ring, kOrd, f, g),
                   poly_mul(ring, kOrd, f, h)));
    // product rule in every variable
    auto fg = poly_mul(ring, kOrd, f, g);
    for (int v = 0; v < nvars; ++v) {
      auto lhs = poly_derivative(ring, fg, v);
      auto rhs = poly_add(
          ring, kOrd, poly_mul(ring, kOrd, poly_derivative(ring, f, v), g),
          poly_mul(ring, kOrd, f, poly_derivative(ring, g, v)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("grevlex and lex orders behave") {
  // grevlex with a > b > c on a few textbook comparisons
  Monomial a = Monomial::var(0), b = Monomial::var(1), c = Monomial::var(2);
  CHECK(mono_cmp(MonomialOrder::Grevlex, a, b, 3) > 0);
  CHECK(mono_cmp(MonomialOrder::Grevlex, a * a, a * b, 3) > 0);
  // degree dominates in grevlex
  CHECK(mono_cmp(MonomialOrder::Grevlex, a * b, a, 3) > 0);
  // a*c vs b*b: same degree; last differing exponent is c -> a*c smaller
  CHECK(mono_cmp(MonomialOrder::Grevlex, a * c, b * b, 3) < 0);
  // lex: a > b^5
  Monomial b5 = Monomial::var(1, 5);
  CHECK(mono_cmp(MonomialOrder::Lex, a, b5, 3) > 0);
}

TEST_CASE("matrix rank over Fp") {
  PrimeField big(kDefaultPrime);
  FpMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  m.at(1, 0) = 3;
  m.at(1, 1) = 2;
  CHECK(matrix_rank_fp(m, big) == 2);

  PrimeField seven(7);
  FpMatrix s(2, 2);
  s.at(0, 0) = 1;
  s.at(0, 1) = 2;
  s.at(1, 0) = 2;
  s.at(1, 1) = 4;
  CHECK(matrix_rank_fp(s, seven) == 1);

  FpMatrix zero(3, 4);
  CHECK(matrix_rank_fp(zero, big) == 0);
}

TEST_CASE("row echelon membership") {
  PrimeField f(kDefaultPrime);
  RowEchelon re(3, f);
  CHECK(re.absorb({1, 1, 0}));
  CHECK(re.absorb({0, 1, 1}));
  CHECK_FALSE(re.absorb({1, 2, 1}));  // dependent
  CHECK(re.rank() == 2);
  CHECK(re.in_rowspace({1, 0, f.p() - 1}));
  CHECK_FALSE(re.in_rowspace({1, 0, 0}));
}
