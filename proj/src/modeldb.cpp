#include "compartdb/modeldb.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "compartdb/enumerate.hpp"
#include "compartdb/version.hpp"

namespace compartdb {

using ordered_json = nlohmann::ordered_json;

std::string record_to_json(const AssessmentRecord& record) {
  ordered_json j;
  j["model"] = record.key;
  j["n"] = record.model.n;
  ordered_json params = ordered_json::object();
  for (const auto& [key, status] : record.statuses) {
    params[key.name()] = to_string(status);
  }
  j["params"] = std::move(params);
  ordered_json meta = ordered_json::object();
  meta["prime"] = record.meta.prime;
  meta["prime2"] = record.meta.prime2;
  meta["seed"] = record.meta.seed;
  meta["trials"] = record.meta.trials;
  meta["version"] = record.meta.version;
  j["meta"] = std::move(meta);
  return j.dump();
}

AssessmentRecord record_from_json(const std::string& line) {
  ordered_json j = ordered_json::parse(line);
  AssessmentRecord record;
  record.key = j.at("model").get<std::string>();
  record.model = parse_model(record.key);
  if (record.model.n != j.at("n").get<int>()) {
    throw std::invalid_argument("record n does not match its model: " + record.key);
  }
  for (const auto& [name, value] : j.at("params").items()) {
    record.statuses.emplace(ParamKey::from_name(name),
                            id_status_from_string(value.get<std::string>()));
  }
  const auto& meta = j.at("meta");
  record.meta.prime = meta.at("prime").get<std::uint32_t>();
  record.meta.prime2 = meta.at("prime2").get<std::uint32_t>();
  record.meta.seed = meta.at("seed").get<std::uint64_t>();
  record.meta.trials = meta.at("trials").get<int>();
  record.meta.version = meta.at("version").get<std::string>();
  return record;
}

namespace {

void check_record(const AssessmentRecord& record) {
  if (format_model(record.model) != record.key) {
    throw std::invalid_argument("record key does not encode its model: " +
                                record.key);
  }
  auto keys = parameter_keys(record.model);
  if (keys.size() != record.statuses.size()) {
    throw std::invalid_argument("record parameter set mismatch: " + record.key);
  }
  for (const auto& k : keys) {
    if (!record.statuses.count(k)) {
      throw std::invalid_argument("record missing parameter " + k.name() + ": " +
                                  record.key);
    }
  }
}

}  // namespace

void Database::insert(AssessmentRecord record) {
  check_record(record);
  auto [it, inserted] = records_.emplace(record.key, std::move(record));
  if (!inserted) return;  // already present
  const AssessmentRecord* p = &it->second;
  by_nodes_[p->model.n].push_back(p);
  by_inputs_[int(p->model.inputs.size())].push_back(p);
  by_leaks_[int(p->model.leaks.size())].push_back(p);
  by_class_[int(model_class(*p))].push_back(p);
}

const AssessmentRecord* Database::find(const std::string& key) const {
  auto it = records_.find(key);
  return it == records_.end() ? nullptr : &it->second;
}

std::map<ParamKey, IdStatus> Database::get(const Model& m) const {
  CanonicalForm cf = canonicalize(m);
  const AssessmentRecord* record = find(cf.key);
  if (!record) {
    throw NotFoundError("model not in database: " + cf.key);
  }
  return relabel_result(record->statuses, inverse_permutation(cf.permutation));
}

std::vector<const AssessmentRecord*> Database::filterby(
    const std::function<bool(const AssessmentRecord&)>& predicate) const {
  std::vector<const AssessmentRecord*> out;
  for (const auto& [key, record] : records_) {
    if (predicate(record)) out.push_back(&record);
  }
  return out;
}

const std::map<int, std::vector<const AssessmentRecord*>>& Database::index(
    IndexDim dim) const {
  switch (dim) {
    case IndexDim::Nodes: return by_nodes_;
    case IndexDim::Inputs: return by_inputs_;
    case IndexDim::Leaks: return by_leaks_;
    case IndexDim::Class: return by_class_;
  }
  throw std::logic_error("bad index dimension");
}

namespace {

std::filesystem::path shard_path(const std::filesystem::path& dir, int n) {
  return dir / ("models_n" + std::to_string(n) + ".jsonl");
}

ordered_json config_to_json(const AssessConfig& cfg) {
  ordered_json j = ordered_json::object();
  j["prime"] = cfg.prime;
  j["prime2"] = cfg.prime2;
  j["seed"] = cfg.seed;
  j["max_trials"] = cfg.max_trials;
  j["degree_cap"] = cfg.degree_cap;
  return j;
}

AssessConfig config_from_json(const ordered_json& j) {
  AssessConfig cfg;
  cfg.prime = j.at("prime").get<std::uint32_t>();
  cfg.prime2 = j.at("prime2").get<std::uint32_t>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.max_trials = j.at("max_trials").get<int>();
  cfg.degree_cap = j.at("degree_cap").get<int>();
  return cfg;
}

}  // namespace

Manifest Database::manifest() const {
  Manifest m;
  m.engine = std::string(kEngineName) + "-" + kEngineVersion;
  m.config = config_;
  for (const auto& [n, bucket] : by_nodes_) {
    m.counts[n] = long(bucket.size());
    m.max_nodes = std::max(m.max_nodes, n);
  }
  return m;
}

void Database::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::map<int, std::ofstream> shards;
  for (const auto& [key, record] : records_) {
    auto it = shards.find(record.model.n);
    if (it == shards.end()) {
      it = shards.emplace(record.model.n,
                          std::ofstream(shard_path(dir, record.model.n)))
               .first;
      if (!it->second) {
        throw std::runtime_error("cannot write shard for n=" +
                                 std::to_string(record.model.n));
      }
    }
    it->second << record_to_json(record) << '\n';
  }
  Manifest m = manifest();
  ordered_json j;
  j["max_nodes"] = m.max_nodes;
  ordered_json counts = ordered_json::object();
  for (const auto& [n, c] : m.counts) counts[std::to_string(n)] = c;
  j["counts"] = std::move(counts);
  j["engine"] = m.engine;
  j["config"] = config_to_json(m.config);
  std::ofstream mf(dir / "manifest.json");
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  mf << j.dump() << '\n';
}

Database Database::load(const std::filesystem::path& dir) {
  Database db;
  std::ifstream mf(dir / "manifest.json");
  if (mf) {
    ordered_json j = ordered_json::parse(mf);
    db.config_ = config_from_json(j.at("config"));
  }
  std::vector<std::filesystem::path> shards;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.starts_with("models_n") && name.ends_with(".jsonl")) {
      shards.push_back(entry.path());
    }
  }
  std::sort(shards.begin(), shards.end());
  for (const auto& path : shards) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      db.insert(record_from_json(line));
    }
  }
  return db;
}

namespace {

// Assess `todo` in parallel; completed records are appended to the partial
// stream in input order so an interrupted build resumes cleanly.
void assess_batch(const std::vector<Model>& todo, const AssessConfig& cfg,
                  std::ofstream& partial, const BuildOptions& options,
                  long already_done, long total,
                  std::map<std::string, AssessmentRecord>& out) {
  const int jobs = std::max(1, options.jobs);
  std::vector<AssessmentRecord> results(todo.size());
  std::vector<double> seconds(todo.size(), 0.0);
  std::vector<char> completed(todo.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex commit_mutex;
  std::size_t commit_pos = 0;
  long done = already_done;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= todo.size() || failed.load()) return;
      auto t0 = std::chrono::steady_clock::now();
      AssessmentRecord rec;
      try {
        rec = assess(todo[i], cfg);
      } catch (...) {
        std::scoped_lock lock(commit_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
      double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
      std::scoped_lock lock(commit_mutex);
      results[i] = std::move(rec);
      seconds[i] = dt;
      completed[i] = 1;
      while (commit_pos < todo.size() && completed[commit_pos]) {
        partial << record_to_json(results[commit_pos]) << '\n';
        ++done;
        if (options.on_assessed) {
          options.on_assessed(results[commit_pos].key, seconds[commit_pos], done,
                              total);
        }
        if (options.on_hotspot && seconds[commit_pos] > options.hotspot_seconds) {
          options.on_hotspot(results[commit_pos].key, seconds[commit_pos]);
        }
        ++commit_pos;
      }
      partial.flush();
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (auto& rec : results) {
    out.emplace(rec.key, std::move(rec));
  }
}

}  // namespace

Database build_database(int max_nodes, const AssessConfig& cfg,
                        const std::filesystem::path& dir,
                        const BuildOptions& options) {
  if (max_nodes < 2) {
    throw std::invalid_argument("build_database: max_nodes must be >= 2");
  }
  std::filesystem::create_directories(dir);
  Database db;
  db.set_config(cfg);

  long total = 0;
  std::map<int, std::vector<Model>> per_n;
  for (int n = 2; n <= max_nodes; ++n) {
    per_n[n] = enumerate_models({.n = n});
    total += long(per_n[n].size());
  }

  long done_overall = 0;
  for (int n = 2; n <= max_nodes; ++n) {
    const auto& models = per_n[n];
    std::set<std::string> wanted;
    for (const auto& m : models) wanted.insert(format_model(m));

    std::map<std::string, AssessmentRecord> got;
    auto absorb_file = [&](const std::filesystem::path& path) {
      std::ifstream in(path);
      if (!in) return;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        AssessmentRecord rec = record_from_json(line);
        if (!wanted.count(rec.key)) {
          throw std::runtime_error("stale record (different convention?) in " +
                                   path.string() + ": " + rec.key);
        }
        got.emplace(rec.key, std::move(rec));
      }
    };
    auto final_path = shard_path(dir, n);
    auto partial_path = final_path;
    partial_path += ".partial";
    if (options.resume) {
      absorb_file(final_path);
      absorb_file(partial_path);
    }

    std::vector<Model> todo;
    for (const auto& m : models) {
      if (!got.count(format_model(m))) todo.push_back(m);
    }
    done_overall += long(got.size());

    if (!todo.empty()) {
      std::ofstream partial(partial_path, std::ios::app);
      if (!partial) {
        throw std::runtime_error("cannot open " + partial_path.string());
      }
      assess_batch(todo, cfg, partial, options, done_overall, total, got);
      done_overall += long(todo.size());
    }

    // Final sorted shard, then retire the partial.
    std::ofstream out(final_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + final_path.string());
    for (const auto& [key, rec] : got) {
      out << record_to_json(rec) << '\n';
    }
    out.close();
    std::filesystem::remove(partial_path);
    for (auto& [key, rec] : got) {
      db.insert(std::move(rec));
    }
  }

  // Manifest last: its presence marks a complete build.
  db.save(dir);
  return db;
}

std::function<bool(const AssessmentRecord&)> parse_filter_atoms(
    const std::vector<std::string>& atoms) {
  std::vector<std::function<bool(const AssessmentRecord&)>> tests;
  for (const auto& atom : atoms) {
    auto eq = atom.find('=');
    std::string name = atom.substr(0, eq);
    std::string value = eq == std::string::npos ? "" : atom.substr(eq + 1);
    if (name == "n" || name == "inputs" || name == "leaks") {
      int v = std::stoi(value);
      if (name == "n") {
        tests.push_back([v](const AssessmentRecord& r) { return r.model.n == v; });
      } else if (name == "inputs") {
        tests.push_back(
            [v](const AssessmentRecord& r) { return int(r.model.inputs.size()) == v; });
      } else {
        tests.push_back(
            [v](const AssessmentRecord& r) { return int(r.model.leaks.size()) == v; });
      }
    } else if (name == "class") {
      ModelClass c = model_class_from_string(value);
      tests.push_back(
          [c](const AssessmentRecord& r) { return model_class(r) == c; });
    } else if (name == "has" || name == "all") {
      IdStatus s = id_status_from_string(value);
      bool all = name == "all";
      tests.push_back([s, all](const AssessmentRecord& r) {
        if (all) {
          for (const auto& [k, v] : r.statuses) {
            if (v != s) return false;
          }
          return true;
        }
        for (const auto& [k, v] : r.statuses) {
          if (v == s) return true;
        }
        return false;
      });
    } else if (name == "strongly-connected") {
      bool expect = value.empty() || value == "true";
      if (!value.empty() && value != "true" && value != "false") {
        throw std::invalid_argument("bad filter atom: " + atom);
      }
      tests.push_back([expect](const AssessmentRecord& r) {
        return strongly_connected(r.model) == expect;
      });
    } else {
      throw std::invalid_argument("unknown filter atom: " + atom);
    }
  }
  return [tests](const AssessmentRecord& r) {
    for (const auto& t : tests) {
      if (!t(r)) return false;
    }
    return true;
  };
}

}  // namespace compartdb
