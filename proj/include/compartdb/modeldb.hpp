#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "compartdb/identifiability.hpp"
#include "compartdb/model.hpp"

namespace compartdb {

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Manifest {
  int max_nodes = 0;
  std::map<int, long> counts;  // per vertex count
  std::string engine;
  AssessConfig config;
};

/// Store of assessment records keyed by canonical model encoding, with
/// value indices on vertex count, input count, leak count, and model class.
/// Records are held in canonical labeling; lookups through get() translate
/// back to the caller's labels. On disk: one JSON-Lines shard per vertex
/// count plus manifest.json, records ascending by key.
class Database {
 public:
  Database() = default;

  /// Record must carry its canonical model (statuses in canonical labels).
  void insert(AssessmentRecord record);

  const AssessmentRecord* find(const std::string& key) const;

  /// Isomorphism-aware lookup: statuses are reported against m's own
  /// vertex labels. Throws NotFoundError when the class is absent.
  std::map<ParamKey, IdStatus> get(const Model& m) const;

  /// Ascending-key iteration.
  const std::map<std::string, AssessmentRecord>& records() const {
    return records_;
  }
  std::size_t size() const { return records_.size(); }

  /// All records satisfying the predicate, ascending key order.
  std::vector<const AssessmentRecord*> filterby(
      const std::function<bool(const AssessmentRecord&)>& predicate) const;

  enum class IndexDim { Nodes, Inputs, Leaks, Class };
  const std::map<int, std::vector<const AssessmentRecord*>>& index(
      IndexDim dim) const;

  void save(const std::filesystem::path& dir) const;
  static Database load(const std::filesystem::path& dir);

  Manifest manifest() const;
  void set_config(const AssessConfig& cfg) { config_ = cfg; }
  const AssessConfig& config() const { return config_; }

 private:
  std::map<std::string, AssessmentRecord> records_;
  std::map<int, std::vector<const AssessmentRecord*>> by_nodes_, by_inputs_,
      by_leaks_, by_class_;
  AssessConfig config_;
};

/// Serialization of a single record, bit-stable:
/// {"model":"...","n":2,"params":{...},"meta":{...}}
std::string record_to_json(const AssessmentRecord& record);
AssessmentRecord record_from_json(const std::string& line);

struct BuildOptions {
  int jobs = 1;
  bool resume = true;
  double hotspot_seconds = 60.0;
  // Invoked after each assessment: (canonical key, seconds, done, total).
  std::function<void(const std::string&, double, long, long)> on_assessed;
  // Invoked for assessments slower than hotspot_seconds.
  std::function<void(const std::string&, double)> on_hotspot;
};

/// Enumerates and assesses every database-convention model with
/// 2..max_nodes vertices, streaming shards into `dir`. Partially written
/// shards from an interrupted run are picked up and completed.
Database build_database(int max_nodes, const AssessConfig& cfg,
                        const std::filesystem::path& dir,
                        const BuildOptions& options = {});

/// Conjunction of textual filter atoms, e.g. {"n=2", "leaks=1",
/// "has=globally"}. Supported: n=, inputs=, leaks=, class=, has=, all=,
/// strongly-connected[=true|false].
std::function<bool(const AssessmentRecord&)> parse_filter_atoms(
    const std::vector<std::string>& atoms);

}  // namespace compartdb
