#include "compartdb/groebner.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "compartdb/kernels/fp_kernels.hpp"

namespace compartdb {

namespace {

// Merge h[start..] - c * mono * g into a fresh descending term vector.
std::vector<Term<std::uint32_t>> merge_sub(const FpRing& ring, MonomialOrder ord,
                                           std::span<const Term<std::uint32_t>> h,
                                           std::uint32_t c, const Monomial& mono,
                                           const FpPoly& g, int nvars) {
  std::vector<Term<std::uint32_t>> out;
  out.reserve(h.size() + g.terms.size());
  std::size_t i = 0, j = 0;
  while (i < h.size() && j < g.terms.size()) {
    Monomial gm = g.terms[j].mono * mono;
    int cv = mono_cmp(ord, h[i].mono, gm, nvars);
    if (cv > 0) {
      out.push_back(h[i++]);
    } else if (cv < 0) {
      std::uint32_t prod = ring.mul(c, g.terms[j].coeff);
      if (prod) out.push_back({gm, ring.neg(prod)});
      ++j;
    } else {
      std::uint32_t d = ring.sub(h[i].coeff, ring.mul(c, g.terms[j].coeff));
      if (d) out.push_back({gm, d});
      ++i, ++j;
    }
  }
  for (; i < h.size(); ++i) out.push_back(h[i]);
  for (; j < g.terms.size(); ++j) {
    std::uint32_t prod = ring.mul(c, g.terms[j].coeff);
    if (prod) out.push_back({g.terms[j].mono * mono, ring.neg(prod)});
  }
  return out;
}

int find_divisor(std::span<const FpPoly> basis, const Monomial& m) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (!basis[k].is_zero() && basis[k].leading().mono.divides(m)) return int(k);
  }
  return -1;
}

}  // namespace

FpPoly normal_form(const FpRing& ring, MonomialOrder ord, const FpPoly& f,
                   std::span<const FpPoly> basis) {
  FpPoly out = poly_zero(ring, f.nvars);
  std::vector<Term<std::uint32_t>> work = f.terms;
  std::size_t start = 0;
  while (start < work.size()) {
    const Term<std::uint32_t>& lead = work[start];
    int k = find_divisor(basis, lead.mono);
    if (k < 0) {
      out.terms.push_back(lead);
      ++start;
      continue;
    }
    const FpPoly& g = basis[k];
    std::uint32_t factor = ring.mul(lead.coeff, ring.inv(g.leading().coeff));
    Monomial ratio = lead.mono.divided_by(g.leading().mono);
    work = merge_sub(ring, ord, std::span(work).subspan(start), factor, ratio, g,
                     f.nvars);
    start = 0;
  }
  return out;
}

namespace {

FpPoly make_monic(const FpRing& ring, FpPoly f) {
  if (f.is_zero()) return f;
  std::uint32_t lc = f.leading().coeff;
  if (lc != 1) {
    std::uint32_t ilc = ring.inv(lc);
    for (auto& t : f.terms) t.coeff = ring.mul(t.coeff, ilc);
  }
  return f;
}

FpPoly s_polynomial(const FpRing& ring, MonomialOrder ord, const FpPoly& f,
                    const FpPoly& g) {
  Monomial l = Monomial::lcm(f.leading().mono, g.leading().mono);
  FpPoly a = poly_mul_term(ring, f, l.divided_by(f.leading().mono),
                           ring.inv(f.leading().coeff));
  FpPoly b = poly_mul_term(ring, g, l.divided_by(g.leading().mono),
                           ring.inv(g.leading().coeff));
  return poly_sub(ring, ord, a, b);
}

struct Pair {
  int i, j;
  Monomial lcm;
};

}  // namespace

std::vector<FpPoly> buchberger(const FpRing& ring, MonomialOrder ord,
                               std::vector<FpPoly> gens,
                               const BuchbergerOptions& opts) {
  std::vector<FpPoly> basis;
  int nvars = 0;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    nvars = g.nvars;
    basis.push_back(make_monic(ring, std::move(g)));
  }
  if (basis.empty()) return {};
  // Deterministic starting order: ascending leading terms.
  std::sort(basis.begin(), basis.end(), [&](const FpPoly& a, const FpPoly& b) {
    int c = mono_cmp(ord, a.leading().mono, b.leading().mono, nvars);
    if (c != 0) return c < 0;
    return a.terms.size() < b.terms.size();
  });

  std::deque<Pair> pending;
  std::unordered_set<std::uint64_t> considered;
  auto pair_id = [](int i, int j) {
    return std::uint64_t(std::uint32_t(i)) << 32 | std::uint32_t(j);
  };
  auto push_pairs = [&](int t) {
    for (int i = 0; i < t; ++i) {
      pending.push_back(
          {i, t, Monomial::lcm(basis[i].leading().mono, basis[t].leading().mono)});
    }
  };
  for (int t = 1; t < int(basis.size()); ++t) push_pairs(t);

  while (!pending.empty()) {
    // Normal strategy: smallest lcm first; ties by index for determinism.
    auto best = pending.begin();
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      int c = mono_cmp(ord, it->lcm, best->lcm, nvars);
      if (c < 0 || (c == 0 && std::pair(it->i, it->j) < std::pair(best->i, best->j))) {
        best = it;
      }
    }
    Pair pr = *best;
    pending.erase(best);
    considered.insert(pair_id(pr.i, pr.j));

    const Monomial& li = basis[pr.i].leading().mono;
    const Monomial& lj = basis[pr.j].leading().mono;
    // Product criterion.
    if (li.coprime_with(lj)) continue;
    // Chain criterion: a third element divides the lcm and both side pairs
    // are already handled.
    bool skip = false;
    for (int k = 0; k < int(basis.size()) && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].leading().mono.divides(pr.lcm)) continue;
      auto id1 = pair_id(std::min(pr.i, k), std::max(pr.i, k));
      auto id2 = pair_id(std::min(pr.j, k), std::max(pr.j, k));
      if (considered.count(id1) && considered.count(id2)) skip = true;
    }
    if (skip) continue;

    FpPoly h = normal_form(ring, ord, s_polynomial(ring, ord, basis[pr.i], basis[pr.j]),
                           basis);
    if (h.is_zero()) continue;
    basis.push_back(make_monic(ring, std::move(h)));
    push_pairs(int(basis.size()) - 1);
  }

  // Minimalize: drop elements whose leading term another element divides.
  std::vector<FpPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& mi = basis[i].leading().mono;
      const Monomial& mj = basis[j].leading().mono;
      if (mj.divides(mi)) {
        // On equal leading terms keep the earlier element.
        redundant = !(mi == mj) || j < i;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // Tail-reduce each element against the others.
  std::vector<FpPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<FpPoly> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    FpPoly r = normal_form(ring, ord, minimal[i], others);
    if (!r.is_zero()) reduced.push_back(make_monic(ring, std::move(r)));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const FpPoly& a, const FpPoly& b) {
    return mono_cmp(ord, a.leading().mono, b.leading().mono, nvars) < 0;
  });

  if (opts.verify && !is_groebner_basis(ring, ord, reduced)) {
    throw std::logic_error("buchberger: verification failed");
  }
  return reduced;
}

bool is_groebner_basis(const FpRing& ring, MonomialOrder ord,
                       std::span<const FpPoly> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i].leading().mono.coprime_with(basis[j].leading().mono)) continue;
      FpPoly s = s_polynomial(ring, ord, basis[i], basis[j]);
      if (!normal_form(ring, ord, s, basis).is_zero()) return false;
    }
  }
  return true;
}

namespace {

bool is_pure_power_of(const Monomial& m, int var) {
  if (m.degree == 0 || m.exps[var] != m.degree) return false;
  return true;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < kMaxPolyVars; ++i) {
      h = (h ^ m.exps[i]) * 1099511628211ull;
    }
    return std::size_t(h);
  }
};

}  // namespace

bool has_pure_power_leading_term(std::span<const FpPoly> basis, int var) {
  for (const auto& g : basis) {
    if (!g.is_zero() && is_pure_power_of(g.leading().mono, var)) return true;
  }
  return false;
}

bool is_zero_dimensional(std::span<const FpPoly> basis, int nvars) {
  for (const auto& g : basis) {
    if (!g.is_zero() && g.leading().mono.is_one()) return true;  // unit ideal
  }
  for (int v = 0; v < nvars; ++v) {
    if (!has_pure_power_leading_term(basis, v)) return false;
  }
  return true;
}

std::optional<long> quotient_dimension(std::span<const FpPoly> basis, int nvars,
                                       long limit) {
  if (!is_zero_dimensional(basis, nvars)) return std::nullopt;
  std::vector<Monomial> lts;
  for (const auto& g : basis) {
    if (!g.is_zero()) lts.push_back(g.leading().mono);
    if (!g.is_zero() && g.leading().mono.is_one()) return 0;  // unit ideal
  }
  auto standard = [&](const Monomial& m) {
    for (const auto& lt : lts) {
      if (lt.divides(m)) return false;
    }
    return true;
  };
  std::unordered_set<Monomial, MonomialHash> seen;
  std::deque<Monomial> queue;
  Monomial one = Monomial::one();
  if (!standard(one)) return 0;
  seen.insert(one);
  queue.push_back(one);
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    for (int v = 0; v < nvars; ++v) {
      Monomial child = m * Monomial::var(v);
      if (!standard(child) || seen.count(child)) continue;
      if (long(seen.size()) + 1 > limit) return std::nullopt;
      seen.insert(child);
      queue.push_back(child);
    }
  }
  return long(seen.size());
}

UniPoly uni_trim(UniPoly q) {
  while (!q.c.empty() && q.c.back() == 0) q.c.pop_back();
  return q;
}

UniPoly uni_monic(const FpRing& ring, UniPoly q) {
  q = uni_trim(std::move(q));
  if (q.is_zero() || q.c.back() == 1) return q;
  std::uint32_t s = ring.inv(q.c.back());
  for (auto& v : q.c) v = ring.mul(v, s);
  return q;
}

UniPoly uni_derivative(const FpRing& ring, const UniPoly& q) {
  UniPoly d;
  for (std::size_t i = 1; i < q.c.size(); ++i) {
    d.c.push_back(ring.mul(q.c[i], ring.from_int(long(i))));
  }
  return uni_trim(std::move(d));
}

UniPoly uni_mod(const FpRing& ring, UniPoly a, const UniPoly& b) {
  a = uni_trim(std::move(a));
  if (b.is_zero()) throw std::domain_error("uni_mod: division by zero");
  std::uint32_t ilc = ring.inv(b.c.back());
  while (int(a.c.size()) >= int(b.c.size()) && !a.is_zero()) {
    std::uint32_t f = ring.mul(a.c.back(), ilc);
    std::size_t shift = a.c.size() - b.c.size();
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      a.c[shift + i] = ring.sub(a.c[shift + i], ring.mul(f, b.c[i]));
    }
    a = uni_trim(std::move(a));
  }
  return a;
}

UniPoly uni_divexact(const FpRing& ring, const UniPoly& a, const UniPoly& b) {
  UniPoly rem = uni_trim(a);
  if (b.is_zero()) throw std::domain_error("uni_divexact: division by zero");
  UniPoly quot;
  if (rem.c.size() >= b.c.size()) quot.c.assign(rem.c.size() - b.c.size() + 1, 0);
  std::uint32_t ilc = ring.inv(b.c.back());
  while (int(rem.c.size()) >= int(b.c.size()) && !rem.is_zero()) {
    std::uint32_t f = ring.mul(rem.c.back(), ilc);
    std::size_t shift = rem.c.size() - b.c.size();
    quot.c[shift] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      rem.c[shift + i] = ring.sub(rem.c[shift + i], ring.mul(f, b.c[i]));
    }
    rem = uni_trim(std::move(rem));
  }
  if (!rem.is_zero()) throw std::domain_error("uni_divexact: nonzero remainder");
  return uni_trim(std::move(quot));
}

UniPoly uni_gcd(const FpRing& ring, UniPoly a, UniPoly b) {
  a = uni_trim(std::move(a));
  b = uni_trim(std::move(b));
  while (!b.is_zero()) {
    UniPoly r = uni_mod(ring, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return uni_monic(ring, std::move(a));
}

std::uint32_t uni_eval(const FpRing& ring, const UniPoly& q, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t i = q.c.size(); i-- > 0;) {
    acc = ring.add(ring.mul(acc, x), q.c[i]);
  }
  return acc;
}

std::string uni_to_string(const FpRing& ring, const UniPoly& q,
                          const std::string& var) {
  if (q.is_zero()) return "0";
  std::string out;
  for (std::size_t i = q.c.size(); i-- > 0;) {
    if (q.c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || q.c[i] != 1) out += ring.to_string(q.c[i]);
    if (i > 0) {
      if (q.c[i] != 1) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

UniPoly squarefree_part(const FpRing& ring, const UniPoly& q) {
  UniPoly t = uni_trim(q);
  if (t.is_zero()) throw std::domain_error("squarefree_part of zero polynomial");
  if (t.degree() == 0) return UniPoly{{1}};
  UniPoly g = uni_gcd(ring, t, uni_derivative(ring, t));
  return uni_monic(ring, uni_divexact(ring, t, g));
}

namespace {

// Augmented incremental elimination over a growing monomial dictionary.
class DependenceFinder {
 public:
  DependenceFinder(const FpRing& ring, long max_support)
      : ring_(ring), max_support_(max_support) {}

  // Absorbs the normal form of power d; returns the dependence coefficients
  // (monic, length d+1) when the new row is linearly dependent.
  std::optional<std::vector<std::uint32_t>> absorb(const FpPoly& nf, int d) {
    for (const auto& t : nf.terms) {
      if (!columns_.count(t.mono)) {
        if (long(columns_.size()) + 1 > max_support_) {
          throw SupportLimitError("minimal_polynomial support limit exceeded");
        }
        columns_.emplace(t.mono, columns_.size());
      }
    }
    std::vector<std::uint32_t> v(columns_.size(), 0);
    for (const auto& t : nf.terms) v[columns_.at(t.mono)] = t.coeff;
    std::vector<std::uint32_t> aug(std::size_t(d) + 1, 0);
    aug[std::size_t(d)] = 1;

    for (const auto& row : rows_) {
      if (row.pivot >= v.size() || v[row.pivot] == 0) continue;
      std::uint32_t c = ring_.field.neg(v[row.pivot]);
      kernels::axpy_mod(v.data(), row.data.data(), row.data.size(), c, ring_.field);
      for (std::size_t i = 0; i < row.aug.size(); ++i) {
        aug[i] = ring_.field.add(aug[i], ring_.field.mul(c, row.aug[i]));
      }
    }
    std::size_t pivot = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == v.size()) return aug;  // dependence; aug.back() == 1
    std::uint32_t s = ring_.field.inv(v[pivot]);
    kernels::scale_mod(v.data(), v.size(), s, ring_.field);
    kernels::scale_mod(aug.data(), aug.size(), s, ring_.field);
    rows_.push_back({pivot, std::move(v), std::move(aug)});
    return std::nullopt;
  }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<std::uint32_t> data;
    std::vector<std::uint32_t> aug;
  };
  const FpRing& ring_;
  long max_support_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> columns_;
  std::vector<Row> rows_;
};

}  // namespace

std::optional<UniPoly> minimal_polynomial(const FpRing& ring, MonomialOrder ord,
                                          int var, std::span<const FpPoly> basis,
                                          int degree_cap,
                                          const MinimalPolyOptions& opts) {
  if (basis.empty() && degree_cap < 0) return std::nullopt;
  int nvars = basis.empty() ? var + 1 : basis.front().nvars;
  if (var < 0 || var >= nvars) throw std::invalid_argument("variable out of range");

  DependenceFinder finder(ring, opts.max_support);
  FpPoly nf = normal_form(ring, ord, poly_constant(ring, nvars, ring.one()), basis);
  if (nf.is_zero()) return UniPoly{{1}};  // unit ideal: 1 vanishes
  Monomial x = Monomial::var(var);
  for (int d = 0; d <= degree_cap; ++d) {
    if (d > 0) {
      nf = normal_form(ring, ord, poly_mul_term(ring, nf, x, ring.one()), basis);
    }
    if (auto dep = finder.absorb(nf, d)) {
      return uni_trim(UniPoly{std::move(*dep)});
    }
  }
  return std::nullopt;
}

}  // namespace compartdb
