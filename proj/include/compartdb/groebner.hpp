#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "compartdb/poly.hpp"

namespace compartdb {

/// Raised when a normal-form power sequence outgrows its work budget; the
/// caller retries under a friendlier variable order.
class SupportLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Remainder of f under multivariate division by `basis`: no term of the
/// result is divisible by any leading term of the basis, and f minus the
/// result lies in the ideal generated by the basis.
FpPoly normal_form(const FpRing& ring, MonomialOrder ord, const FpPoly& f,
                   std::span<const FpPoly> basis);

struct BuchbergerOptions {
  bool verify = false;  // re-check every S-polynomial of the final basis
};

/// Reduced Groebner basis of the ideal generated by `gens`: monic,
/// auto-reduced, sorted ascending by leading term. Empty input gives an
/// empty basis.
std::vector<FpPoly> buchberger(const FpRing& ring, MonomialOrder ord,
                               std::vector<FpPoly> gens,
                               const BuchbergerOptions& opts = {});

/// True iff every S-polynomial of the set reduces to zero against it.
bool is_groebner_basis(const FpRing& ring, MonomialOrder ord,
                       std::span<const FpPoly> basis);

/// Leading-term staircase queries (any Groebner basis).
bool is_zero_dimensional(std::span<const FpPoly> basis, int nvars);

/// Number of standard monomials, or nullopt when infinite (not
/// zero-dimensional) or beyond `limit`.
std::optional<long> quotient_dimension(std::span<const FpPoly> basis, int nvars,
                                       long limit = 200000);

/// True iff some basis element's leading term is a positive pure power of
/// x_var. A variable that is algebraic modulo the ideal always has one
/// (the leading term of its minimal polynomial is such a power), so a
/// negative answer certifies non-algebraicity.
bool has_pure_power_leading_term(std::span<const FpPoly> basis, int var);

/// Dense univariate polynomial over Fp; c[i] multiplies t^i, no trailing
/// zero coefficients.
struct UniPoly {
  std::vector<std::uint32_t> c;

  int degree() const { return int(c.size()) - 1; }  // -1 for the zero poly
  bool is_zero() const { return c.empty(); }
  bool operator==(const UniPoly&) const = default;
};

UniPoly uni_trim(UniPoly q);
UniPoly uni_monic(const FpRing& ring, UniPoly q);
UniPoly uni_derivative(const FpRing& ring, const UniPoly& q);
UniPoly uni_mod(const FpRing& ring, UniPoly a, const UniPoly& b);
UniPoly uni_divexact(const FpRing& ring, const UniPoly& a, const UniPoly& b);
UniPoly uni_gcd(const FpRing& ring, UniPoly a, UniPoly b);  // monic
std::uint32_t uni_eval(const FpRing& ring, const UniPoly& q, std::uint32_t x);
std::string uni_to_string(const FpRing& ring, const UniPoly& q,
                          const std::string& var = "t");

/// q / gcd(q, q'), made monic: the product of the distinct irreducible
/// factors. Requires q nonzero and p beyond deg(q).
UniPoly squarefree_part(const FpRing& ring, const UniPoly& q);

struct MinimalPolyOptions {
  long max_support = 2000000;  // total distinct monomials across the search
};

/// Least-degree monic q with q(x_var) = 0 modulo the basis ideal and
/// deg(q) <= degree_cap, found by linear dependence among the normal forms
/// of successive powers of x_var. nullopt when no dependence appears up to
/// the cap. Requires a Groebner basis for the active order.
std::optional<UniPoly> minimal_polynomial(const FpRing& ring, MonomialOrder ord,
                                          int var, std::span<const FpPoly> basis,
                                          int degree_cap,
                                          const MinimalPolyOptions& opts = {});

}  // namespace compartdb
