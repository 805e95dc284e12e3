#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "compartdb/fp.hpp"
#include "compartdb/rational.hpp"

namespace compartdb {

/// Exponent-vector capacity of the polynomial layer. Models up to n = 5
/// fit (20 edge rates + 5 leak rates + one operator variable).
inline constexpr int kMaxPolyVars = 26;

struct Monomial {
  std::uint32_t degree = 0;
  std::array<std::uint16_t, kMaxPolyVars> exps{};

  bool is_one() const { return degree == 0; }

  static Monomial one() { return {}; }

  static Monomial var(int v, std::uint16_t e = 1) {
    Monomial m;
    m.exps[v] = e;
    m.degree = e;
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxPolyVars; ++i) {
      std::uint32_t s = std::uint32_t(a.exps[i]) + b.exps[i];
      if (s > 0xffff) throw std::overflow_error("monomial exponent overflow");
      m.exps[i] = std::uint16_t(s);
    }
    m.degree = a.degree + b.degree;
    return m;
  }

  /// True iff this monomial divides `other`.
  bool divides(const Monomial& other) const {
    if (degree > other.degree) return false;
    for (int i = 0; i < kMaxPolyVars; ++i) {
      if (exps[i] > other.exps[i]) return false;
    }
    return true;
  }

  Monomial divided_by(const Monomial& d) const {
    Monomial m;
    for (int i = 0; i < kMaxPolyVars; ++i) {
      m.exps[i] = std::uint16_t(exps[i] - d.exps[i]);
    }
    m.degree = degree - d.degree;
    return m;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    std::uint32_t deg = 0;
    for (int i = 0; i < kMaxPolyVars; ++i) {
      m.exps[i] = std::max(a.exps[i], b.exps[i]);
      deg += m.exps[i];
    }
    m.degree = deg;
    return m;
  }

  bool coprime_with(const Monomial& b) const {
    for (int i = 0; i < kMaxPolyVars; ++i) {
      if (exps[i] && b.exps[i]) return false;
    }
    return true;
  }

  bool operator==(const Monomial&) const = default;
};

enum class MonomialOrder : std::uint8_t { Grevlex, Lex };

/// Three-way compare over the first nvars variables: negative when a < b,
/// zero when equal, positive when a > b.
inline int mono_cmp(MonomialOrder ord, const Monomial& a, const Monomial& b,
                    int nvars) {
  if (ord == MonomialOrder::Grevlex) {
    if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
    // Ties break reverse-lexicographically: the last differing exponent
    // decides, smaller exponent wins.
    for (int i = nvars - 1; i >= 0; --i) {
      if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? 1 : -1;
    }
    return 0;
  }
  for (int i = 0; i < nvars; ++i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
  }
  return 0;
}

template <class E>
struct Term {
  Monomial mono;
  E coeff;

  bool operator==(const Term&) const = default;
};

/// Sparse multivariate polynomial. Terms are strictly descending in the
/// monomial order the polynomial was built with; every operation preserves
/// the order it is handed. `modulus` tags prime-field polynomials so that
/// cross-field mixups are caught; it is 0 for rational coefficients.
template <class E>
struct Poly {
  int nvars = 0;
  std::uint32_t modulus = 0;
  std::vector<Term<E>> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || terms[0].mono.is_one(); }
  const Term<E>& leading() const { return terms.front(); }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.mono.degree);
    return d;
  }

  bool operator==(const Poly&) const = default;
};

using RatPoly = Poly<Rational>;
using FpPoly = Poly<std::uint32_t>;

/// Coefficient-ring handle for exact rationals.
struct RationalRing {
  using Elem = Rational;
  std::uint32_t modulus() const { return 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  std::string to_string(const Elem& a) const { return a.str(); }
};

/// Coefficient-ring handle for Fp.
struct FpRing {
  PrimeField field;
  using Elem = std::uint32_t;

  explicit FpRing(std::uint32_t p) : field(p) {}
  explicit FpRing(const PrimeField& f) : field(f) {}

  std::uint32_t modulus() const { return field.p(); }
  Elem add(Elem a, Elem b) const { return field.add(a, b); }
  Elem sub(Elem a, Elem b) const { return field.sub(a, b); }
  Elem mul(Elem a, Elem b) const { return field.mul(a, b); }
  Elem neg(Elem a) const { return field.neg(a); }
  Elem inv(Elem a) const { return field.inv(a); }
  bool is_zero(Elem a) const { return a == 0; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const { return field.from_int64(v); }
  std::string to_string(Elem a) const { return std::to_string(a); }
};

namespace poly_detail {

inline void check_nvars(int nvars) {
  if (nvars < 0 || nvars > kMaxPolyVars) {
    throw std::invalid_argument("polynomial arity exceeds build limit " +
                                std::to_string(kMaxPolyVars));
  }
}

template <class R>
void check_compatible(const R& ring, const Poly<typename R::Elem>& a,
                      const Poly<typename R::Elem>& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("polynomial arity mismatch");
  if (a.modulus != b.modulus || a.modulus != ring.modulus()) {
    throw std::invalid_argument("polynomial modulus mismatch");
  }
}

}  // namespace poly_detail

template <class R>
Poly<typename R::Elem> poly_zero(const R& ring, int nvars) {
  poly_detail::check_nvars(nvars);
  Poly<typename R::Elem> p;
  p.nvars = nvars;
  p.modulus = ring.modulus();
  return p;
}

template <class R>
Poly<typename R::Elem> poly_constant(const R& ring, int nvars,
                                     typename R::Elem c) {
  auto p = poly_zero(ring, nvars);
  if (!ring.is_zero(c)) p.terms.push_back({Monomial::one(), std::move(c)});
  return p;
}

template <class R>
Poly<typename R::Elem> poly_var(const R& ring, int nvars, int v,
                                std::uint16_t e = 1) {
  auto p = poly_zero(ring, nvars);
  if (v < 0 || v >= nvars) throw std::invalid_argument("variable out of range");
  if (e > 0) p.terms.push_back({Monomial::var(v, e), ring.one()});
  else p.terms.push_back({Monomial::one(), ring.one()});
  return p;
}

/// Sorts descending, combines equal monomials, drops zeros.
template <class R>
Poly<typename R::Elem> make_poly(const R& ring, MonomialOrder ord, int nvars,
                                 std::vector<Term<typename R::Elem>> terms) {
  poly_detail::check_nvars(nvars);
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    return mono_cmp(ord, a.mono, b.mono, nvars) > 0;
  });
  Poly<typename R::Elem> p = poly_zero(ring, nvars);
  for (auto& t : terms) {
    if (!p.terms.empty() && p.terms.back().mono == t.mono) {
      p.terms.back().coeff = ring.add(p.terms.back().coeff, t.coeff);
      if (ring.is_zero(p.terms.back().coeff)) p.terms.pop_back();
    } else if (!ring.is_zero(t.coeff)) {
      p.terms.push_back(std::move(t));
    }
  }
  return p;
}

template <class R>
Poly<typename R::Elem> poly_add(const R& ring, MonomialOrder ord,
                                const Poly<typename R::Elem>& a,
                                const Poly<typename R::Elem>& b) {
  poly_detail::check_compatible(ring, a, b);
  Poly<typename R::Elem> r = poly_zero(ring, a.nvars);
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    int c = mono_cmp(ord, a.terms[i].mono, b.terms[j].mono, a.nvars);
    if (c > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (c < 0) {
      r.terms.push_back(b.terms[j++]);
    } else {
      auto s = ring.add(a.terms[i].coeff, b.terms[j].coeff);
      if (!ring.is_zero(s)) r.terms.push_back({a.terms[i].mono, std::move(s)});
      ++i, ++j;
    }
  }
  for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
  return r;
}

template <class R>
Poly<typename R::Elem> poly_neg(const R& ring, Poly<typename R::Elem> a) {
  for (auto& t : a.terms) t.coeff = ring.neg(t.coeff);
  return a;
}

template <class R>
Poly<typename R::Elem> poly_sub(const R& ring, MonomialOrder ord,
                                const Poly<typename R::Elem>& a,
                                const Poly<typename R::Elem>& b) {
  return poly_add(ring, ord, a, poly_neg(ring, b));
}

/// a * (c * mono), preserving the term order (orders are multiplicative).
template <class R>
Poly<typename R::Elem> poly_mul_term(const R& ring,
                                     const Poly<typename R::Elem>& a,
                                     const Monomial& mono,
                                     const typename R::Elem& c) {
  Poly<typename R::Elem> r = poly_zero(ring, a.nvars);
  if (ring.is_zero(c)) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    auto prod = ring.mul(t.coeff, c);
    if (!ring.is_zero(prod)) r.terms.push_back({t.mono * mono, std::move(prod)});
  }
  return r;
}

/// h - c * mono * g in one merge pass.
template <class R>
Poly<typename R::Elem> poly_sub_mul(const R& ring, MonomialOrder ord,
                                    const Poly<typename R::Elem>& h,
                                    const typename R::Elem& c,
                                    const Monomial& mono,
                                    const Poly<typename R::Elem>& g) {
  poly_detail::check_compatible(ring, h, g);
  Poly<typename R::Elem> r = poly_zero(ring, h.nvars);
  r.terms.reserve(h.terms.size() + g.terms.size());
  std::size_t i = 0, j = 0;
  while (i < h.terms.size() && j < g.terms.size()) {
    Monomial gm = g.terms[j].mono * mono;
    int cv = mono_cmp(ord, h.terms[i].mono, gm, h.nvars);
    if (cv > 0) {
      r.terms.push_back(h.terms[i++]);
    } else if (cv < 0) {
      auto prod = ring.mul(c, g.terms[j].coeff);
      if (!ring.is_zero(prod)) r.terms.push_back({gm, ring.neg(prod)});
      ++j;
    } else {
      auto d = ring.sub(h.terms[i].coeff, ring.mul(c, g.terms[j].coeff));
      if (!ring.is_zero(d)) r.terms.push_back({gm, std::move(d)});
      ++i, ++j;
    }
  }
  for (; i < h.terms.size(); ++i) r.terms.push_back(h.terms[i]);
  for (; j < g.terms.size(); ++j) {
    auto prod = ring.mul(c, g.terms[j].coeff);
    if (!ring.is_zero(prod)) r.terms.push_back({g.terms[j].mono * mono, ring.neg(prod)});
  }
  return r;
}

template <class R>
Poly<typename R::Elem> poly_mul(const R& ring, MonomialOrder ord,
                                const Poly<typename R::Elem>& a,
                                const Poly<typename R::Elem>& b) {
  poly_detail::check_compatible(ring, a, b);
  Poly<typename R::Elem> r = poly_zero(ring, a.nvars);
  for (const auto& t : a.terms) {
    auto shifted = poly_mul_term(ring, b, t.mono, t.coeff);
    r = poly_add(ring, ord, r, shifted);
  }
  return r;
}

/// Formal partial derivative with respect to variable v.
template <class R>
Poly<typename R::Elem> poly_derivative(const R& ring,
                                       const Poly<typename R::Elem>& a, int v) {
  Poly<typename R::Elem> r = poly_zero(ring, a.nvars);
  if (v < 0 || v >= a.nvars) throw std::invalid_argument("variable out of range");
  for (const auto& t : a.terms) {
    std::uint16_t e = t.mono.exps[v];
    if (e == 0) continue;
    auto c = ring.mul(t.coeff, ring.from_int(long(e)));
    if (ring.is_zero(c)) continue;
    Term<typename R::Elem> nt{t.mono, std::move(c)};
    nt.mono.exps[v] = std::uint16_t(e - 1);
    nt.mono.degree -= 1;
    r.terms.push_back(std::move(nt));
  }
  return r;
}

template <class R>
typename R::Elem pow_elem(const R& ring, typename R::Elem base, std::uint32_t e) {
  auto r = ring.one();
  while (e) {
    if (e & 1) r = ring.mul(r, base);
    base = ring.mul(base, base);
    e >>= 1;
  }
  return r;
}

/// Full evaluation at a point (one value per variable).
template <class R>
typename R::Elem poly_evaluate(const R& ring, const Poly<typename R::Elem>& a,
                               std::span<const typename R::Elem> point) {
  if (int(point.size()) != a.nvars) {
    throw std::invalid_argument("evaluation point arity mismatch");
  }
  auto acc = ring.zero();
  for (const auto& t : a.terms) {
    auto v = t.coeff;
    for (int i = 0; i < a.nvars; ++i) {
      if (t.mono.exps[i]) v = ring.mul(v, pow_elem(ring, point[i], t.mono.exps[i]));
    }
    acc = ring.add(acc, v);
  }
  return acc;
}

/// Partial evaluation: substitutes the variables that carry a value and
/// leaves the rest symbolic. Arity is unchanged.
template <class R>
Poly<typename R::Elem> poly_substitute(
    const R& ring, MonomialOrder ord, const Poly<typename R::Elem>& a,
    std::span<const std::optional<typename R::Elem>> point) {
  if (int(point.size()) != a.nvars) {
    throw std::invalid_argument("substitution point arity mismatch");
  }
  std::vector<Term<typename R::Elem>> terms;
  terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    Term<typename R::Elem> nt{t.mono, t.coeff};
    for (int i = 0; i < a.nvars; ++i) {
      if (t.mono.exps[i] && point[i]) {
        nt.coeff = ring.mul(nt.coeff, pow_elem(ring, *point[i], t.mono.exps[i]));
        nt.mono.degree -= t.mono.exps[i];
        nt.mono.exps[i] = 0;
      }
    }
    terms.push_back(std::move(nt));
  }
  return make_poly(ring, ord, a.nvars, std::move(terms));
}

/// Exchanges two variables; re-sorts under the same order.
template <class R>
Poly<typename R::Elem> poly_swap_vars(const R& ring, MonomialOrder ord,
                                      const Poly<typename R::Elem>& a, int v1,
                                      int v2) {
  std::vector<Term<typename R::Elem>> terms = a.terms;
  for (auto& t : terms) std::swap(t.mono.exps[v1], t.mono.exps[v2]);
  return make_poly(ring, ord, a.nvars, std::move(terms));
}

template <class R>
std::string poly_to_string(const R& ring, const Poly<typename R::Elem>& a,
                           std::span<const std::string> names) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < a.terms.size(); ++k) {
    const auto& t = a.terms[k];
    std::string cs = ring.to_string(t.coeff);
    bool negative = !cs.empty() && cs[0] == '-';
    if (k == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (negative) cs.erase(0, 1);
    bool wrote = false;
    if (cs != "1" || t.mono.is_one()) {
      out += cs;
      wrote = true;
    }
    for (int i = 0; i < a.nvars; ++i) {
      if (!t.mono.exps[i]) continue;
      if (wrote) out += "*";
      out += i < int(names.size()) ? names[i] : "x" + std::to_string(i);
      if (t.mono.exps[i] > 1) out += "^" + std::to_string(t.mono.exps[i]);
      wrote = true;
    }
  }
  return out;
}

/// Rational -> Fp coefficient reduction, term order preserved.
inline FpPoly to_fp(const FpRing& ring, const RatPoly& a) {
  FpPoly r = poly_zero(ring, a.nvars);
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    std::uint32_t c = rational_mod(t.coeff, ring.field);
    if (c != 0) r.terms.push_back({t.mono, c});
  }
  return r;
}

}  // namespace compartdb
