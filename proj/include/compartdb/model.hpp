#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace compartdb {

/// A linear compartment model: a simple directed graph on n vertices plus
/// input, output, and leak vertex sets. Edge and vertex lists are kept
/// sorted and duplicate-free; construct through validate() or parse_model()
/// to get a checked instance.
struct Model {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (from, to), from != to
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::vector<int> leaks;

  bool operator==(const Model&) const = default;
  bool has_edge(int from, int to) const;
};

/// Thrown by validate(): carries one message per violated invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Thrown by parse_model(); position is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Checks all structural invariants (vertex ranges, self-loops, duplicate
/// edges or set entries), normalizes ordering, and returns the checked
/// model. Throws ValidationError listing every violation.
Model validate(Model raw);

/// One rate constant of a model: the rate of an edge or of a leak.
/// Ordering sorts edge rates by (from, to) first, then leak rates by
/// vertex; this is also the polynomial variable order used by the algebra.
struct ParamKey {
  enum class Kind : std::uint8_t { Edge = 0, Leak = 1 };
  Kind kind = Kind::Edge;
  int from = 0;
  int to = 0;  // unused for leaks

  static ParamKey edge(int from, int to) { return {Kind::Edge, from, to}; }
  static ParamKey leak(int vertex) { return {Kind::Leak, vertex, 0}; }

  std::string name() const;  // "a(i->j)" or "leak(i)"
  static ParamKey from_name(std::string_view name);

  auto operator<=>(const ParamKey&) const = default;
};

/// All parameters of a model in canonical order.
std::vector<ParamKey> parameter_keys(const Model& m);

/// True iff the underlying undirected graph is connected.
bool weakly_connected(const Model& m);

/// True iff every ordered vertex pair is joined by a directed path.
bool strongly_connected(const Model& m);

/// True iff every vertex has a directed path (possibly empty) to some
/// output vertex.
bool all_reach_output(const Model& m);

/// Applies a vertex relabeling: perm[v] is the new label of v.
Model relabel(const Model& m, std::span<const int> perm);

std::vector<int> inverse_permutation(std::span<const int> perm);

/// Relabels the keys of a per-parameter result map; values are untouched.
template <class V>
std::map<ParamKey, V> relabel_result(const std::map<ParamKey, V>& result,
                                     std::span<const int> perm) {
  std::map<ParamKey, V> out;
  for (const auto& [key, value] : result) {
    ParamKey mapped = key.kind == ParamKey::Kind::Edge
                          ? ParamKey::edge(perm[key.from], perm[key.to])
                          : ParamKey::leak(perm[key.from]);
    out.emplace(mapped, value);
  }
  return out;
}

struct CanonicalForm {
  Model canonical;
  std::vector<int> permutation;  // original label -> canonical label
  std::string key;               // format_model(canonical)
};

/// Picks, over all n! relabelings, the one whose text encoding is
/// lexicographically smallest. Deterministic: among permutations reaching
/// the minimum, the lexicographically smallest permutation is returned, so
/// canonicalizing a canonical model yields the identity. Practical ceiling
/// n <= 8.
CanonicalForm canonicalize(const Model& m);

/// Removes the leak at `vertex`; throws std::invalid_argument if absent.
Model remove_leak(const Model& m, int vertex);

/// Exact text encoding:
///   graph=[A_0,...,A_{n-1}];in=[...];out=[...];leak=[...]
/// where A_i is the ascending out-neighbor list of vertex i. No whitespace.
std::string format_model(const Model& m);

/// Inverse of format_model; rejects anything not in canonical spelling
/// (ascending lists, no whitespace) and validates the result.
Model parse_model(std::string_view text);

}  // namespace compartdb
