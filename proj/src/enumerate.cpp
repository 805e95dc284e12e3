#include "compartdb/enumerate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace compartdb {

namespace {

std::vector<std::pair<int, int>> edge_slots(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  return slots;
}

std::vector<int> bits_of(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1u) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> enumerate_digraphs(int n) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("enumerate_digraphs: exhaustive mode covers 1..4");
  }
  auto slots = edge_slots(n);
  std::vector<std::vector<std::pair<int, int>>> out;
  out.reserve(std::size_t(1) << slots.size());
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (mask >> s & 1u) edges.push_back(slots[s]);
    }
    out.push_back(std::move(edges));
  }
  return out;
}

std::vector<Model> enumerate_models(const EnumerationConfig& cfg) {
  const int n = cfg.n;
  if (n < 1) throw std::invalid_argument("enumerate_models: n must be >= 1");
  if (cfg.max_inputs < 0 || cfg.max_inputs > n || cfg.outputs_exactly < 0 ||
      cfg.outputs_exactly > n) {
    throw std::invalid_argument("enumerate_models: bad input/output bounds");
  }

  // Subsets grouped by popcount, reused for inputs and outputs.
  std::vector<std::vector<std::uint32_t>> by_size(std::size_t(n) + 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    by_size[std::size_t(__builtin_popcount(mask))].push_back(mask);
  }
  std::vector<std::uint32_t> input_masks;
  for (int s = 0; s <= cfg.max_inputs; ++s) {
    input_masks.insert(input_masks.end(), by_size[std::size_t(s)].begin(),
                       by_size[std::size_t(s)].end());
  }
  const auto& output_masks = by_size[std::size_t(cfg.outputs_exactly)];

  std::unordered_map<std::string, Model> seen;
  Model m;
  m.n = n;
  for (auto& edges : enumerate_digraphs(n)) {
    m.edges = std::move(edges);
    if (!weakly_connected(m)) continue;
    for (std::uint32_t out_mask : output_masks) {
      m.outputs = bits_of(out_mask, n);
      if (!all_reach_output(m)) continue;
      for (std::uint32_t in_mask : input_masks) {
        m.inputs = bits_of(in_mask, n);
        for (std::uint32_t leak_mask = 0; leak_mask < (1u << n); ++leak_mask) {
          m.leaks = bits_of(leak_mask, n);
          CanonicalForm cf = canonicalize(m);
          seen.emplace(std::move(cf.key), std::move(cf.canonical));
        }
      }
    }
  }

  std::vector<Model> models;
  models.reserve(seen.size());
  std::vector<std::pair<std::string, Model>> pairs(
      std::make_move_iterator(seen.begin()), std::make_move_iterator(seen.end()));
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, model] : pairs) models.push_back(std::move(model));
  return models;
}

}  // namespace compartdb
