#include "compartdb/io_equations.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace compartdb {

namespace {

std::map<ParamKey, int> variable_index(const std::vector<ParamKey>& params) {
  std::map<ParamKey, int> idx;
  for (std::size_t k = 0; k < params.size(); ++k) idx.emplace(params[k], int(k));
  return idx;
}

}  // namespace

OdeSystem to_ode_system(const Model& m) {
  OdeSystem sys;
  sys.n = m.n;
  sys.params = parameter_keys(m);
  sys.equations.resize(m.n);
  sys.inputs = m.inputs;
  sys.outputs = m.outputs;
  for (auto [i, j] : m.edges) {
    ParamKey rate = ParamKey::edge(i, j);
    sys.equations[j].terms.push_back({+1, rate, i});
    sys.equations[i].terms.push_back({-1, rate, i});
  }
  for (int v : m.leaks) {
    sys.equations[v].terms.push_back({-1, ParamKey::leak(v), v});
  }
  for (int v : m.inputs) sys.equations[v].has_input = true;
  return sys;
}

std::vector<std::vector<RatPoly>> compartmental_matrix(const Model& m) {
  RationalRing ring;
  const MonomialOrder ord = MonomialOrder::Grevlex;
  auto params = parameter_keys(m);
  auto idx = variable_index(params);
  int nv = int(params.size());

  std::vector<std::vector<RatPoly>> a(
      m.n, std::vector<RatPoly>(m.n, poly_zero(ring, nv)));
  for (auto [i, j] : m.edges) {
    RatPoly rate = poly_var(ring, nv, idx.at(ParamKey::edge(i, j)));
    a[j][i] = poly_add(ring, ord, a[j][i], rate);
    a[i][i] = poly_sub(ring, ord, a[i][i], rate);
  }
  for (int v : m.leaks) {
    RatPoly rate = poly_var(ring, nv, idx.at(ParamKey::leak(v)));
    a[v][v] = poly_sub(ring, ord, a[v][v], rate);
  }
  return a;
}

namespace {

// Cofactor expansion along the first remaining row.
RatPoly det_recursive(const RationalRing& ring, MonomialOrder ord,
                      const std::vector<std::vector<RatPoly>>& mat,
                      std::vector<int> rows, std::vector<int> cols, int nvars) {
  if (rows.empty()) return poly_constant(ring, nvars, ring.one());
  RatPoly acc = poly_zero(ring, nvars);
  int r = rows.front();
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const RatPoly& entry = mat[r][cols[k]];
    if (entry.is_zero()) continue;
    std::vector<int> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (t != k) sub_cols.push_back(cols[t]);
    }
    RatPoly minor = det_recursive(ring, ord, mat, sub_rows, sub_cols, nvars);
    RatPoly contrib = poly_mul(ring, ord, entry, minor);
    acc = (k % 2 == 0) ? poly_add(ring, ord, acc, contrib)
                       : poly_sub(ring, ord, acc, contrib);
  }
  return acc;
}

// Coefficients of the last variable (the operator symbol), least order
// first; each entry is an arity-(nvars-1) polynomial.
std::vector<RatPoly> collect_by_operator(const RationalRing& ring,
                                         MonomialOrder ord, const RatPoly& p,
                                         int max_order) {
  int s_var = p.nvars - 1;
  std::vector<std::vector<Term<Rational>>> buckets(std::size_t(max_order) + 1);
  for (const auto& t : p.terms) {
    int d = t.mono.exps[s_var];
    if (d > max_order) throw std::logic_error("operator order out of range");
    Term<Rational> nt = t;
    nt.mono.degree -= nt.mono.exps[s_var];
    nt.mono.exps[s_var] = 0;
    buckets[std::size_t(d)].push_back(std::move(nt));
  }
  std::vector<RatPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    out.push_back(make_poly(ring, ord, p.nvars - 1, std::move(b)));
  }
  return out;
}

}  // namespace

IOEquation io_equation(const Model& m, int output) {
  if (std::find(m.outputs.begin(), m.outputs.end(), output) == m.outputs.end()) {
    throw std::invalid_argument("io_equation: vertex " + std::to_string(output) +
                                " is not an output");
  }
  RationalRing ring;
  const MonomialOrder ord = MonomialOrder::Grevlex;
  IOEquation eq;
  eq.n = m.n;
  eq.output = output;
  eq.params = parameter_keys(m);
  int nv = int(eq.params.size());

  // Characteristic matrix dI - A over the extended ring; the operator
  // symbol is the last variable.
  auto a = compartmental_matrix(m);
  std::vector<std::vector<RatPoly>> c(m.n, std::vector<RatPoly>(m.n));
  RatPoly s = poly_var(ring, nv + 1, nv);
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      RatPoly entry = a[i][j];
      entry.nvars = nv + 1;  // widen: exponents beyond nv are already zero
      c[i][j] = (i == j) ? poly_sub(ring, ord, s, entry) : poly_neg(ring, entry);
    }
  }

  std::vector<int> all(m.n);
  for (int i = 0; i < m.n; ++i) all[i] = i;
  RatPoly det = det_recursive(ring, ord, c, all, all, nv + 1);
  eq.lhs = collect_by_operator(ring, ord, det, m.n);

  for (int j : m.inputs) {
    std::vector<int> rows, cols;
    for (int i = 0; i < m.n; ++i) {
      if (i != j) rows.push_back(i);
      if (i != output) cols.push_back(i);
    }
    RatPoly minor = det_recursive(ring, ord, c, rows, cols, nv + 1);
    if ((j + output) % 2 != 0) minor = poly_neg(ring, minor);
    IOEquation::RhsGroup group;
    group.input = j;
    group.coeff = collect_by_operator(ring, ord, minor, m.n - 1);
    eq.rhs.push_back(std::move(group));
  }
  return eq;
}

CoefficientMap coefficient_map(const IOEquation& eq) {
  CoefficientMap map;
  map.params = eq.params;
  for (int d = eq.n - 1; d >= 0; --d) {
    if (!eq.lhs[std::size_t(d)].is_constant()) map.polys.push_back(eq.lhs[std::size_t(d)]);
  }
  for (const auto& group : eq.rhs) {
    for (int d = int(group.coeff.size()) - 1; d >= 0; --d) {
      if (!group.coeff[std::size_t(d)].is_constant()) {
        map.polys.push_back(group.coeff[std::size_t(d)]);
      }
    }
  }
  return map;
}

CoefficientMap coefficient_map(const Model& m) {
  CoefficientMap map;
  map.params = parameter_keys(m);
  for (int o : m.outputs) {
    auto part = coefficient_map(io_equation(m, o));
    map.polys.insert(map.polys.end(), part.polys.begin(), part.polys.end());
  }
  return map;
}

namespace {

std::string state_name(int i) { return "x" + std::to_string(i); }

std::string derivative_name(const std::string& base, int order) {
  if (order == 0) return base;
  return base + "^(" + std::to_string(order) + ")";
}

std::string poly_factor(const RationalRing& ring, const RatPoly& p,
                        std::span<const std::string> names,
                        const std::string& symbol) {
  if (p.is_constant()) {
    if (p.is_zero()) return "";
    const Rational& c = p.terms[0].coeff;
    if (c == 1) return symbol;
    return ring.to_string(c) + "*" + symbol;
  }
  std::string body = poly_to_string(ring, p, names);
  if (p.terms.size() == 1) return body + "*" + symbol;
  return "(" + body + ")*" + symbol;
}

}  // namespace

std::string ode_system_to_string(const OdeSystem& sys) {
  std::string out;
  for (int i = 0; i < sys.n; ++i) {
    out += state_name(i) + "' =";
    const auto& eq = sys.equations[i];
    bool first = true;
    for (const auto& t : eq.terms) {
      if (first) {
        out += t.sign < 0 ? " -" : " ";
        first = false;
      } else {
        out += t.sign < 0 ? " - " : " + ";
      }
      out += t.param.name() + "*" + state_name(t.state);
    }
    if (eq.has_input) {
      out += first ? " u" + std::to_string(i) : " + u" + std::to_string(i);
      first = false;
    }
    if (first) out += " 0";
    out += "\n";
  }
  for (int o : sys.outputs) {
    out += (sys.outputs.size() == 1 ? std::string("y") : "y" + std::to_string(o)) +
           " = " + state_name(o) + "\n";
  }
  return out;
}

std::string io_equation_to_string(const IOEquation& eq) {
  RationalRing ring;
  std::vector<std::string> names;
  names.reserve(eq.params.size());
  for (const auto& k : eq.params) names.push_back(k.name());

  std::string out;
  for (int d = eq.n; d >= 0; --d) {
    const RatPoly& c = eq.lhs[std::size_t(d)];
    std::string part = poly_factor(ring, c, names, derivative_name("y", d));
    if (part.empty()) continue;
    if (!out.empty()) out += " + ";
    out += part;
  }
  out += " = ";
  std::string rhs;
  for (const auto& group : eq.rhs) {
    std::string u = "u" + std::to_string(group.input);
    for (int d = int(group.coeff.size()) - 1; d >= 0; --d) {
      std::string part =
          poly_factor(ring, group.coeff[std::size_t(d)], names, derivative_name(u, d));
      if (part.empty()) continue;
      if (!rhs.empty()) rhs += " + ";
      rhs += part;
    }
  }
  out += rhs.empty() ? "0" : rhs;
  return out;
}

}  // namespace compartdb
