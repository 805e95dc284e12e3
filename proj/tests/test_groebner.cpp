#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "compartdb/groebner.hpp"

using namespace compartdb;

namespace {

const MonomialOrder kOrd = MonomialOrder::Grevlex;

FpPoly fppoly(const FpRing& ring, int nvars,
              std::initializer_list<std::pair<long, std::vector<int>>> spec) {
  std::vector<Term<std::uint32_t>> terms;
  for (const auto& [coef, exps] : spec) {
    Monomial m;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      m.exps[v] = std::uint16_t(exps[v]);
      m.degree += std::uint32_t(exps[v]);
    }
    terms.push_back({m, ring.from_int(coef)});
  }
  return make_poly(ring, kOrd, nvars, std::move(terms));
}

}  // namespace

TEST_CASE("normal form matches the hand-reduced example") {
  FpRing ring(kDefaultPrime);
  // a = var 0, b = var 1
  auto g1 = fppoly(ring, 2, {{1, {1, 0}}, {1, {0, 1}}, {-5, {0, 0}}});  // a+b-5
  auto g2 = fppoly(ring, 2, {{1, {0, 2}}, {-5, {0, 1}}, {6, {0, 0}}});  // b^2-5b+6
  std::vector<FpPoly> basis{g1, g2};

  auto a2 = fppoly(ring, 2, {{1, {2, 0}}});
  auto nf = normal_form(ring, kOrd, a2, basis);
  CHECK(nf == fppoly(ring, 2, {{19, {0, 0}}, {-5, {0, 1}}}));  // 19 - 5b

  CHECK(normal_form(ring, kOrd, g2, std::vector<FpPoly>{g2}).is_zero());

  // A variable untouched by the leading terms passes through.
  auto c = fppoly(ring, 3, {{1, {0, 0, 1}}});
  auto g1w = fppoly(ring, 3, {{1, {1, 0, 0}}, {1, {0, 1, 0}}, {-5, {0, 0, 0}}});
  CHECK(normal_form(ring, kOrd, c, std::vector<FpPoly>{g1w}) == c);
}

TEST_CASE("buchberger on the worked examples") {
  FpRing ring(kDefaultPrime);
  auto g1 = fppoly(ring, 2, {{1, {1, 0}}, {1, {0, 1}}, {-5, {0, 0}}});  // a+b-5
  auto g2 = fppoly(ring, 2, {{1, {1, 1}}, {-6, {0, 0}}});               // ab-6
  auto basis = buchberger(ring, kOrd, {g1, g2}, {.verify = true});
  REQUIRE(basis.size() == 2);
  // ascending by leading term: a + b - 5 (degree 1) first
  CHECK(basis[0] == g1);
  CHECK(basis[1] == fppoly(ring, 2, {{1, {0, 2}}, {-5, {0, 1}}, {6, {0, 0}}}));

  // Inconsistent system collapses to {1}.
  auto x1 = fppoly(ring, 1, {{1, {1}}, {-1, {0}}});
  auto x2 = fppoly(ring, 1, {{1, {1}}, {-2, {0}}});
  auto unit = buchberger(ring, kOrd, {x1, x2});
  REQUIRE(unit.size() == 1);
  CHECK(unit[0] == fppoly(ring, 1, {{1, {0}}}));

  auto x = fppoly(ring, 1, {{1, {1}}});
  auto single = buchberger(ring, kOrd, {x});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == x);

  CHECK(buchberger(ring, kOrd, {}).empty());
}

TEST_CASE("buchberger property: random systems verify and contain their ideal") {
  FpRing ring(kDefaultPrime);
  std::mt19937_64 rng(6);
  for (int iter = 0; iter < 25; ++iter) {
    int nvars = 2 + int(rng() % 2);
    std::vector<FpPoly> gens;
    int count = 2 + int(rng() % 2);
    for (int g = 0; g < count; ++g) {
      std::vector<Term<std::uint32_t>> terms;
      int nterms = 1 + int(rng() % 4);
      for (int t = 0; t < nterms; ++t) {
        Monomial m;
        for (int v = 0; v < nvars; ++v) {
          m.exps[v] = std::uint16_t(rng() % 3);
          m.degree += m.exps[v];
        }
        terms.push_back({m, ring.from_int(long(rng() % 9) - 4)});
      }
      gens.push_back(make_poly(ring, kOrd, nvars, std::move(terms)));
    }
    auto basis = buchberger(ring, kOrd, gens, {.verify = true});
    for (const auto& g : gens) {
      CHECK(normal_form(ring, kOrd, g, basis).is_zero());
    }
  }
}

TEST_CASE("staircase queries") {
  FpRing ring(kDefaultPrime);
  auto g1 = fppoly(ring, 2, {{1, {1, 0}}, {1, {0, 1}}, {-5, {0, 0}}});
  auto g2 = fppoly(ring, 2, {{1, {0, 2}}, {-5, {0, 1}}, {6, {0, 0}}});
  std::vector<FpPoly> zero_dim{g1, g2};
  CHECK(is_zero_dimensional(zero_dim, 2));
  CHECK(quotient_dimension(zero_dim, 2) == 2);  // standard monomials {1, b}

  auto hyperbola = fppoly(ring, 2, {{1, {1, 1}}, {-6, {0, 0}}});
  std::vector<FpPoly> pos_dim{hyperbola};
  CHECK_FALSE(is_zero_dimensional(pos_dim, 2));
  CHECK_FALSE(quotient_dimension(pos_dim, 2).has_value());
  CHECK_FALSE(has_pure_power_leading_term(pos_dim, 0));
  CHECK_FALSE(has_pure_power_leading_term(pos_dim, 1));
  CHECK(has_pure_power_leading_term(zero_dim, 1));
}

TEST_CASE("minimal polynomials on the quotient") {
  FpRing ring(kDefaultPrime);
  auto g1 = fppoly(ring, 2, {{1, {1, 0}}, {1, {0, 1}}, {-5, {0, 0}}});
  auto g2 = fppoly(ring, 2, {{1, {0, 2}}, {-5, {0, 1}}, {6, {0, 0}}});
  std::vector<FpPoly> basis{g1, g2};

  UniPoly expect{{6, ring.field.p() - 5, 1}};  // t^2 - 5t + 6
  auto qb = minimal_polynomial(ring, kOrd, 1, basis, 4);
  REQUIRE(qb.has_value());
  CHECK(*qb == expect);
  auto qa = minimal_polynomial(ring, kOrd, 0, basis, 4);
  REQUIRE(qa.has_value());
  CHECK(*qa == expect);

  // On the hyperbola ab = 6 neither variable is algebraic.
  auto hyperbola = fppoly(ring, 2, {{1, {1, 1}}, {-6, {0, 0}}});
  std::vector<FpPoly> curve{hyperbola};
  CHECK_FALSE(minimal_polynomial(ring, kOrd, 0, curve, 32).has_value());

  // Roots of the minimal polynomial: 2 and 3.
  CHECK(uni_eval(ring, *qb, 2) == 0);
  CHECK(uni_eval(ring, *qb, 3) == 0);
  CHECK(uni_eval(ring, *qb, 4) != 0);
}

TEST_CASE("squarefree part") {
  FpRing ring(kDefaultPrime);
  auto p = ring.field.p();
  UniPoly sq{{4, p - 4, 1}};  // (t-2)^2
  CHECK(squarefree_part(ring, sq) == UniPoly{{p - 2, 1}});

  UniPoly already{{6, p - 5, 1}};  // t^2-5t+6
  CHECK(squarefree_part(ring, already) == already);

  UniPoly cubic{{0, 0, p - 1, 1}};  // t^3 - t^2
  CHECK(squarefree_part(ring, cubic) == UniPoly{{0, p - 1, 1}});  // t^2 - t

  CHECK_THROWS_AS(squarefree_part(ring, UniPoly{}), std::domain_error);
}

TEST_CASE("univariate helpers") {
  FpRing ring(17);
  UniPoly a{{1, 0, 1}};  // t^2 + 1
  UniPoly b{{1, 1}};     // t + 1
  auto prod_mod = uni_mod(ring, a, b);  // t^2+1 mod t+1 -> 2
  CHECK(prod_mod == UniPoly{{2}});
  CHECK(uni_gcd(ring, a, b) == UniPoly{{1}});
  UniPoly c{{16, 0, 1}};  // t^2 - 1
  CHECK(uni_gcd(ring, c, b) == b);
  CHECK(uni_divexact(ring, c, b) == UniPoly{{16, 1}});  // t - 1
  CHECK(uni_to_string(ring, c) == "t^2 + 16");
}
