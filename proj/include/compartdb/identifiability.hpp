#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "compartdb/io_equations.hpp"
#include "compartdb/model.hpp"

namespace compartdb {

enum class IdStatus : std::uint8_t {
  Globally,
  Locally,
  NonIdentifiable,
  Undetermined,
};

const char* to_string(IdStatus s);
IdStatus id_status_from_string(std::string_view s);

inline constexpr std::uint64_t kDefaultAssessSeed = 1729;

struct AssessConfig {
  std::uint32_t prime = kDefaultPrime;
  std::uint32_t prime2 = kConfirmationPrime;
  std::uint64_t seed = kDefaultAssessSeed;
  int max_trials = 8;   // total trials before giving up (>= 2)
  int degree_cap = 256;  // minimal-polynomial cap for non-finite fibers
};

/// The published verdicts for one isomorphism class. `statuses` is keyed in
/// the labeling of `model` (the model handed to assess); `key` names the
/// isomorphism class, so records computed from relabeled inputs compare via
/// relabel_result.
struct AssessmentRecord {
  std::string key;
  Model model;
  std::map<ParamKey, IdStatus> statuses;
  struct Meta {
    std::uint32_t prime = 0;
    std::uint32_t prime2 = 0;
    std::uint64_t seed = 0;
    int trials = 0;
    std::string version;
  } meta;
};

/// Raised when the trial policy exhausts max_trials without two agreeing
/// independent trials.
class AssessmentError : public std::runtime_error {
 public:
  AssessmentError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Deterministic counter-based specialization point: `count` values in
/// [1, p-1] derived from (canonical key, trial, seed). Isomorphic models
/// share the stream.
std::vector<std::uint32_t> specialization_point(std::string_view canonical_key,
                                                std::uint64_t seed, int trial,
                                                const PrimeField& f,
                                                std::size_t count);

enum class JacobianVerdict : std::uint8_t { LocallyOrBetter, NonIdentifiable };

/// Finite-fiber rank test: parameter k is LocallyOrBetter iff the unit
/// vector e_k lies in the row space of the Jacobian of the coefficient map
/// at the specialization point. An empty map leaves every parameter
/// NonIdentifiable.
std::map<ParamKey, JacobianVerdict> jacobian_test(const CoefficientMap& map,
                                                  std::span<const std::uint32_t> point,
                                                  const PrimeField& f);

struct ClassifyOutcome {
  std::map<ParamKey, IdStatus> statuses;
  // Set when some parameter produced a degree-1 squarefree minimal
  // polynomial whose root differs from the specialization coordinate; the
  // trial must be redrawn.
  bool unlucky = false;
};

/// Fiber classification through a reduced Groebner basis of
/// <c_i(theta) - c_i(theta*)>: a parameter with no minimal polynomial is
/// NonIdentifiable; squarefree degree 1 (root matching theta*) is Globally;
/// degree >= 2 is Locally.
ClassifyOutcome groebner_classify(const CoefficientMap& map,
                                  std::span<const std::uint32_t> point,
                                  const PrimeField& f, const AssessConfig& cfg);

/// Full assessment: coefficient map, Jacobian + Groebner classification on
/// shared specializations, cross-checked between the two primes until two
/// independent trials agree. Deterministic given (canonical key, cfg).
AssessmentRecord assess(const Model& m, const AssessConfig& cfg = {});

/// Model-level rollup of the per-parameter verdicts.
enum class ModelClass : std::uint8_t {
  Identifiable,         // every parameter globally identifiable
  LocallyIdentifiable,  // no non-identifiable parameter, >= 1 locally
  NonIdentifiable,      // >= 1 non-identifiable parameter
};

const char* to_string(ModelClass c);
ModelClass model_class_from_string(std::string_view s);

/// A record with no parameters is Identifiable (vacuously).
ModelClass model_class(const AssessmentRecord& record);

}  // namespace compartdb
