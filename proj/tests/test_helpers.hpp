#pragma once

#include <numeric>
#include <random>

#include "compartdb/model.hpp"

namespace compartdb::testing {

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Uniform-ish random valid model; not necessarily database-convention.
inline Model random_model(int n, std::mt19937_64& rng) {
  Model m;
  m.n = n;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && coin(rng)) m.edges.emplace_back(i, j);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (coin(rng)) m.inputs.push_back(v);
    if (coin(rng)) m.outputs.push_back(v);
    if (coin(rng)) m.leaks.push_back(v);
  }
  return validate(std::move(m));
}

/// Random model satisfying the database convention: one output, at most
/// two inputs, weakly connected, every vertex reaching the output.
inline Model random_convention_model(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    Model m;
    m.n = n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && coin(rng)) m.edges.emplace_back(i, j);
      }
    }
    m.outputs = {vertex(rng)};
    std::uniform_int_distribution<int> input_count(0, 2);
    int want = std::min(input_count(rng), n);
    while (int(m.inputs.size()) < want) {
      int v = vertex(rng);
      if (std::find(m.inputs.begin(), m.inputs.end(), v) == m.inputs.end()) {
        m.inputs.push_back(v);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (coin(rng)) m.leaks.push_back(v);
    }
    m = validate(std::move(m));
    if (weakly_connected(m) && all_reach_output(m)) return m;
  }
}

}  // namespace compartdb::testing
