#pragma once

#include <utility>
#include <vector>

#include "compartdb/model.hpp"

namespace compartdb {

struct EnumerationConfig {
  int n = 0;
  int max_inputs = 2;      // input sets of size 0..max_inputs
  int outputs_exactly = 1; // output sets of exactly this size
};

/// All 2^(n(n-1)) labeled simple digraphs on n vertices (no self-loops),
/// each exactly once, as sorted edge lists. Exhaustive mode covers n <= 4.
std::vector<std::vector<std::pair<int, int>>> enumerate_digraphs(int n);

/// One canonical representative per isomorphism class of models that are
/// weakly connected, have every vertex reaching an output, and respect the
/// configured input/output counts. Ascending canonical key order.
std::vector<Model> enumerate_models(const EnumerationConfig& cfg);

}  // namespace compartdb
