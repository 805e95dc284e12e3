#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "compartdb/modeldb.hpp"

namespace compartdb {

enum class StatsDim { Nodes, Leaks, Inputs };

/// Counts per (group value, model class); cells[group] = {identifiable,
/// locally identifiable, non-identifiable}.
struct StatsTable {
  StatsDim dim = StatsDim::Nodes;
  std::map<int, std::array<long, 3>> rows;
  long total() const;
};

StatsTable stats_by(const Database& db, StatsDim dim);
std::string stats_csv(const StatsTable& table);

/// Inputs x leaks count grid; rows are input counts 0..max_inputs, columns
/// leak counts 0..max_leaks.
struct HeatGrid {
  int max_inputs = 0;
  int max_leaks = 0;
  std::vector<std::vector<long>> cells;
  long total() const;
};

/// class_filter empty = all models.
HeatGrid heatmap_grid(const Database& db, std::optional<ModelClass> class_filter);
std::string heatmap_csv(const HeatGrid& grid);
std::string heatmap_svg(const HeatGrid& grid, const std::string& title);

/// A model whose removal of its single leak turns an (at least locally)
/// identifiable model into one with a non-identifiable parameter.
struct Counterexample {
  Model model;  // canonical, strongly connected, >= 1 input, exactly 1 leak
  std::map<ParamKey, IdStatus> pre;   // statuses with the leak
  std::map<ParamKey, IdStatus> post;  // statuses after removing it
};

/// Scans every stored model with at most max_nodes vertices that is
/// strongly connected, has at least one input and exactly one leak, and is
/// not non-identifiable; removes the leak and reports the cases that turn
/// non-identifiable. Leak-removed classes absent from the database are
/// assessed on the fly with fallback_cfg.
std::vector<Counterexample> check_leak_removal_conjecture(
    const Database& db, int max_nodes, const AssessConfig& fallback_cfg = {});

/// Edge statistics for the observation that an edge i->j with an input at
/// i and j "leading to an output" is always globally identifiable, under
/// both readings of "leads to".
struct EdgeObservationReport {
  struct Reading {
    long edges = 0;            // edges matching the condition
    long globally = 0;         // of those, globally identifiable
    std::vector<std::string> violations;  // "key param=status" samples
  };
  Reading output_directly;   // j is an output vertex
  Reading edge_to_output;    // j has an edge to an output vertex
};

EdgeObservationReport edge_identifiability_report(const Database& db,
                                                  int max_violations = 16);

}  // namespace compartdb
