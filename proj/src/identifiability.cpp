#include "compartdb/identifiability.hpp"

#include <algorithm>

#include "compartdb/fp_linalg.hpp"
#include "compartdb/groebner.hpp"
#include "compartdb/version.hpp"

namespace compartdb {

const char* to_string(IdStatus s) {
  switch (s) {
    case IdStatus::Globally: return "globally";
    case IdStatus::Locally: return "locally";
    case IdStatus::NonIdentifiable: return "nonidentifiable";
    case IdStatus::Undetermined: return "undetermined";
  }
  return "?";
}

IdStatus id_status_from_string(std::string_view s) {
  if (s == "globally") return IdStatus::Globally;
  if (s == "locally") return IdStatus::Locally;
  if (s == "nonidentifiable") return IdStatus::NonIdentifiable;
  if (s == "undetermined") return IdStatus::Undetermined;
  throw std::invalid_argument("unknown identifiability status: " + std::string(s));
}

namespace {

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

}  // namespace

std::vector<std::uint32_t> specialization_point(std::string_view canonical_key,
                                                std::uint64_t seed, int trial,
                                                const PrimeField& f,
                                                std::size_t count) {
  std::uint64_t state = fnv1a64(canonical_key);
  state ^= splitmix_next(seed);
  std::uint64_t t = std::uint64_t(trial) + 0x51ed2701;
  state ^= splitmix_next(t);
  std::vector<std::uint32_t> point(count);
  for (auto& v : point) {
    for (;;) {
      std::uint32_t x = std::uint32_t(splitmix_next(state) >> 33);
      if (x >= 1 && x < f.p()) {
        v = x;
        break;
      }
    }
  }
  return point;
}

namespace {

void check_point(const CoefficientMap& map, std::span<const std::uint32_t> point,
                 const PrimeField& f) {
  if (point.size() != map.params.size()) {
    throw std::invalid_argument("specialization point arity mismatch");
  }
  for (std::uint32_t v : point) {
    if (v == 0 || v >= f.p()) {
      throw std::invalid_argument("specialization point must avoid 0 mod p");
    }
  }
}

}  // namespace

std::map<ParamKey, JacobianVerdict> jacobian_test(const CoefficientMap& map,
                                                  std::span<const std::uint32_t> point,
                                                  const PrimeField& f) {
  check_point(map, point, f);
  FpRing ring(f);
  const int m = int(map.params.size());
  std::map<ParamKey, JacobianVerdict> out;
  if (m == 0) return out;

  RowEchelon rows(std::size_t(m), f);
  for (const auto& poly : map.polys) {
    FpPoly fp = to_fp(ring, poly);
    std::vector<std::uint32_t> grad(std::size_t(m), 0);
    for (int k = 0; k < m; ++k) {
      grad[std::size_t(k)] =
          poly_evaluate(ring, poly_derivative(ring, fp, k), point);
    }
    rows.absorb(std::move(grad));
  }
  for (int k = 0; k < m; ++k) {
    std::vector<std::uint32_t> unit(std::size_t(m), 0);
    unit[std::size_t(k)] = 1;
    out.emplace(map.params[std::size_t(k)], rows.in_rowspace(std::move(unit))
                                                ? JacobianVerdict::LocallyOrBetter
                                                : JacobianVerdict::NonIdentifiable);
  }
  return out;
}

namespace {

bool poly_less(const FpPoly& a, const FpPoly& b, MonomialOrder ord) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = mono_cmp(ord, a.terms[i].mono, b.terms[i].mono, a.nvars);
    if (c != 0) return c < 0;
    if (a.terms[i].coeff != b.terms[i].coeff) {
      return a.terms[i].coeff < b.terms[i].coeff;
    }
  }
  return a.terms.size() < b.terms.size();
}

// Specialized fiber generators c_i(theta) - c_i(theta*), deduplicated and
// deterministically ordered.
std::vector<FpPoly> fiber_generators(const FpRing& ring, MonomialOrder ord,
                                     const CoefficientMap& map,
                                     std::span<const std::uint32_t> point) {
  std::vector<FpPoly> gens;
  for (const auto& poly : map.polys) {
    FpPoly fp = to_fp(ring, poly);
    std::uint32_t value = poly_evaluate(ring, fp, point);
    FpPoly g = poly_sub(ring, ord, fp,
                        poly_constant(ring, fp.nvars, value));
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  std::sort(gens.begin(), gens.end(),
            [&](const FpPoly& a, const FpPoly& b) { return poly_less(a, b, ord); });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

struct ParamVerdict {
  IdStatus status = IdStatus::Undetermined;
  bool unlucky = false;
};

ParamVerdict classify_from_min_poly(const FpRing& ring, const UniPoly& q,
                                    std::uint32_t coordinate) {
  if (uni_eval(ring, q, coordinate) != 0) {
    throw std::logic_error(
        "groebner_classify: specialization coordinate is not a root of its "
        "minimal polynomial");
  }
  UniPoly sf = squarefree_part(ring, q);
  if (sf.degree() == 1) {
    std::uint32_t root = ring.field.neg(sf.c[0]);  // monic t + c0
    if (root == coordinate) return {IdStatus::Globally, false};
    return {IdStatus::Undetermined, true};  // finite-field artifact; redraw
  }
  return {IdStatus::Locally, false};
}

}  // namespace

ClassifyOutcome groebner_classify(const CoefficientMap& map,
                                  std::span<const std::uint32_t> point,
                                  const PrimeField& f, const AssessConfig& cfg) {
  check_point(map, point, f);
  const MonomialOrder ord = MonomialOrder::Grevlex;
  FpRing ring(f);
  const int m = int(map.params.size());
  ClassifyOutcome out;
  if (m == 0) return out;

  std::vector<FpPoly> gens = fiber_generators(ring, ord, map, point);
  if (gens.empty()) {
    // No constraints at all: every fiber is the whole space.
    for (int k = 0; k < m; ++k) {
      out.statuses.emplace(map.params[std::size_t(k)], IdStatus::NonIdentifiable);
    }
    return out;
  }

  std::vector<FpPoly> basis = buchberger(ring, ord, gens);
  if (basis.size() == 1 && basis[0].is_constant()) {
    throw std::logic_error(
        "groebner_classify: inconsistent fiber ideal (the specialization "
        "point lies on its own fiber by construction)");
  }

  std::optional<long> quotient_dim = quotient_dimension(basis, m);
  for (int k = 0; k < m; ++k) {
    const ParamKey& key = map.params[std::size_t(k)];
    int cap = int(quotient_dim.value_or(long(cfg.degree_cap)));

    std::optional<UniPoly> q;
    bool decided_non_identifiable = false;
    if (!quotient_dim && !has_pure_power_leading_term(basis, k)) {
      // A variable algebraic over the ideal would put a pure power of
      // itself among the leading terms; absence certifies an infinite
      // fiber projection.
      decided_non_identifiable = true;
    } else {
      try {
        q = minimal_polynomial(ring, ord, k, basis, cap);
      } catch (const SupportLimitError&) {
        // Retry under an order with this parameter cheapest: powers of the
        // grevlex-last variable reduce without fill-in.
        std::vector<FpPoly> rotated;
        rotated.reserve(gens.size());
        for (const auto& g : gens) {
          rotated.push_back(poly_swap_vars(ring, ord, g, k, m - 1));
        }
        std::vector<FpPoly> rotated_basis = buchberger(ring, ord, rotated);
        if (!has_pure_power_leading_term(rotated_basis, m - 1)) {
          decided_non_identifiable = true;
        } else {
          q = minimal_polynomial(ring, ord, m - 1, rotated_basis, cap);
        }
      }
    }

    if (decided_non_identifiable || !q) {
      out.statuses.emplace(key, IdStatus::NonIdentifiable);
      continue;
    }
    ParamVerdict v = classify_from_min_poly(ring, *q, point[std::size_t(k)]);
    out.unlucky = out.unlucky || v.unlucky;
    out.statuses.emplace(key, v.status);
  }
  return out;
}

AssessmentRecord assess(const Model& m, const AssessConfig& cfg) {
  if (cfg.prime == cfg.prime2) {
    throw std::invalid_argument("assess: the two primes must differ");
  }
  if (cfg.max_trials < 2) {
    throw std::invalid_argument("assess: max_trials must be at least 2");
  }
  CanonicalForm cf = canonicalize(m);
  CoefficientMap map = coefficient_map(m);

  std::optional<std::map<ParamKey, IdStatus>> per_prime[2];
  for (int trial = 0; trial < cfg.max_trials; ++trial) {
    PrimeField field(trial % 2 == 0 ? cfg.prime : cfg.prime2);
    std::vector<std::uint32_t> point =
        specialization_point(cf.key, cfg.seed, trial, field, map.params.size());

    auto rank_verdicts = jacobian_test(map, point, field);
    ClassifyOutcome fiber = groebner_classify(map, point, field, cfg);
    if (fiber.unlucky) continue;

    bool methods_agree = true;
    for (const auto& [key, status] : fiber.statuses) {
      bool fiber_non_id = status == IdStatus::NonIdentifiable;
      bool rank_non_id =
          rank_verdicts.at(key) == JacobianVerdict::NonIdentifiable;
      if (fiber_non_id != rank_non_id) {
        methods_agree = false;
        break;
      }
    }
    if (!methods_agree) continue;  // unlucky specialization; redraw

    per_prime[trial % 2] = std::move(fiber.statuses);
    if (per_prime[0] && per_prime[1] && *per_prime[0] == *per_prime[1]) {
      AssessmentRecord record;
      record.key = cf.key;
      record.model = m;
      record.statuses = std::move(*per_prime[0]);
      record.meta = {cfg.prime, cfg.prime2, cfg.seed, trial + 1, kEngineVersion};
      return record;
    }
  }
  throw AssessmentError(cf.key, "assessment undetermined after " +
                                    std::to_string(cfg.max_trials) +
                                    " trials for model " + cf.key);
}

const char* to_string(ModelClass c) {
  switch (c) {
    case ModelClass::Identifiable: return "identifiable";
    case ModelClass::LocallyIdentifiable: return "locally";
    case ModelClass::NonIdentifiable: return "nonidentifiable";
  }
  return "?";
}

ModelClass model_class_from_string(std::string_view s) {
  if (s == "identifiable" || s == "globally") return ModelClass::Identifiable;
  if (s == "locally") return ModelClass::LocallyIdentifiable;
  if (s == "nonidentifiable") return ModelClass::NonIdentifiable;
  throw std::invalid_argument("unknown model class: " + std::string(s));
}

ModelClass model_class(const AssessmentRecord& record) {
  bool any_local = false;
  for (const auto& [key, status] : record.statuses) {
    if (status == IdStatus::NonIdentifiable) return ModelClass::NonIdentifiable;
    if (status == IdStatus::Locally) any_local = true;
  }
  return any_local ? ModelClass::LocallyIdentifiable : ModelClass::Identifiable;
}

}  // namespace compartdb
