#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "compartdb/analysis.hpp"
#include "compartdb/enumerate.hpp"
#include "compartdb/identifiability.hpp"
#include "compartdb/io_equations.hpp"
#include "compartdb/modeldb.hpp"
#include "compartdb/version.hpp"

namespace {

using namespace compartdb;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitModelParse = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitAssessment = 4;

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::string line;
  if (path == "-") {
    while (std::getline(std::cin, line)) {
      if (!line.empty()) lines.push_back(line);
    }
    return lines;
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

ordered_json statuses_to_json(const std::map<ParamKey, IdStatus>& statuses) {
  ordered_json obj = ordered_json::object();
  for (const auto& [key, status] : statuses) obj[key.name()] = to_string(status);
  return obj;
}

struct CommonAssessFlags {
  AssessConfig cfg;
  int jobs = 1;

  void attach(CLI::App* cmd, bool with_jobs) {
    cmd->add_option("--prime", cfg.prime, "assessment prime");
    cmd->add_option("--prime2", cfg.prime2, "confirmation prime");
    cmd->add_option("--seed", cfg.seed, "specialization seed");
    cmd->add_option("--trials", cfg.max_trials, "trial budget per model");
    if (with_jobs) cmd->add_option("--jobs", jobs, "worker threads");
  }
};

int run_generate(int nodes, int max_inputs, const std::string& out_path) {
  auto models = enumerate_models({.n = nodes, .max_inputs = max_inputs});
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  for (const auto& m : models) out << format_model(m) << '\n';
  return kExitOk;
}

int run_assess(const std::string& in_path, const std::string& out_path,
               const CommonAssessFlags& flags, bool quiet) {
  std::vector<Model> models;
  for (const auto& line : read_lines(in_path)) {
    models.push_back(canonicalize(parse_model(line)).canonical);
  }
  std::vector<AssessmentRecord> records(models.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= models.size() || failed.load()) return;
      try {
        records[i] = assess(models[i], flags.cfg);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  int jobs = std::max(1, flags.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  for (const auto& rec : records) out << record_to_json(rec) << '\n';
  if (!quiet) std::cerr << "assessed " << records.size() << " models\n";
  return kExitOk;
}

int run_build(const std::string& db_dir, int max_nodes,
              const CommonAssessFlags& flags, bool quiet) {
  BuildOptions options;
  options.jobs = flags.jobs;
  if (!quiet) {
    options.on_assessed = [](const std::string& key, double, long done, long total) {
      if (done % 500 == 0 || done == total) {
        std::cerr << "assessed " << done << "/" << total << " (" << key << ")\n";
      }
    };
  }
  options.on_hotspot = [](const std::string& key, double seconds) {
    std::cerr << "hotspot: " << key << " took " << seconds << " s\n";
  };
  Database db = build_database(max_nodes, flags.cfg, db_dir, options);
  if (!quiet) std::cerr << "database complete: " << db.size() << " records\n";
  return kExitOk;
}

int run_query(const std::string& db_dir, const std::string& model_text) {
  Model m = parse_model(model_text);
  Database db = Database::load(db_dir);
  std::cout << statuses_to_json(db.get(m)).dump() << '\n';
  return kExitOk;
}

int run_filter(const std::string& db_dir, const std::vector<std::string>& atoms) {
  auto predicate = parse_filter_atoms(atoms);
  Database db = Database::load(db_dir);
  for (const AssessmentRecord* record : db.filterby(predicate)) {
    std::cout << record_to_json(*record) << '\n';
  }
  return kExitOk;
}

int run_explain(const std::string& model_text) {
  Model m = parse_model(model_text);
  std::cout << "model: " << format_model(m) << '\n';
  std::cout << ode_system_to_string(to_ode_system(m));
  for (int o : m.outputs) {
    std::cout << "io equation (output " << o << "): "
              << io_equation_to_string(io_equation(m, o)) << '\n';
  }
  return kExitOk;
}

int run_stats(const std::string& db_dir, const std::string& by) {
  StatsDim dim;
  if (by == "nodes") dim = StatsDim::Nodes;
  else if (by == "leaks") dim = StatsDim::Leaks;
  else if (by == "inputs") dim = StatsDim::Inputs;
  else throw CLI::ValidationError("--by must be nodes, leaks, or inputs");
  Database db = Database::load(db_dir);
  std::cout << stats_csv(stats_by(db, dim));
  return kExitOk;
}

int run_heatmap(const std::string& db_dir, const std::string& klass,
                const std::string& out_path) {
  std::optional<ModelClass> filter;
  std::string title = "models per (inputs, leaks)";
  if (klass != "all") {
    filter = model_class_from_string(klass);
    title += " [" + klass + "]";
  }
  Database db = Database::load(db_dir);
  HeatGrid grid = heatmap_grid(db, filter);

  std::filesystem::path svg_path(out_path);
  std::filesystem::path csv_path = svg_path;
  csv_path.replace_extension(".csv");
  std::ofstream svg(svg_path);
  if (!svg) throw std::runtime_error("cannot write " + svg_path.string());
  svg << heatmap_svg(grid, title);
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  csv << heatmap_csv(grid);
  return kExitOk;
}

int run_check_conjecture(const std::string& db_dir, int max_nodes,
                         const std::string& format) {
  Database db = Database::load(db_dir);
  auto counterexamples = check_leak_removal_conjecture(db, max_nodes, db.config());
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& ce : counterexamples) {
      ordered_json item;
      item["model"] = format_model(ce.model);
      item["pre"] = statuses_to_json(ce.pre);
      item["post"] = statuses_to_json(ce.post);
      arr.push_back(std::move(item));
    }
    std::cout << arr.dump() << '\n';
  } else {
    if (counterexamples.empty()) {
      std::cout << "no counterexamples up to " << max_nodes << " vertices\n";
    }
    for (const auto& ce : counterexamples) {
      std::cout << "model: " << format_model(ce.model) << '\n';
      std::cout << "  with leak:";
      for (const auto& [k, s] : ce.pre) {
        std::cout << ' ' << k.name() << '=' << to_string(s);
      }
      std::cout << "\n  without leak:";
      for (const auto& [k, s] : ce.post) {
        std::cout << ' ' << k.name() << '=' << to_string(s);
      }
      std::cout << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear compartment model identifiability database"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output");

  auto* generate = app.add_subcommand("generate", "enumerate canonical models");
  int gen_nodes = 0, gen_max_inputs = 2;
  std::string gen_out = "-";
  generate->add_option("--nodes", gen_nodes, "vertex count")->required();
  generate->add_option("--max-inputs", gen_max_inputs, "input set cap");
  generate->add_option("--out", gen_out, "output file (- for stdout)");

  auto* assess_cmd = app.add_subcommand("assess", "assess models from a file");
  std::string assess_in, assess_out = "-";
  CommonAssessFlags assess_flags;
  assess_cmd->add_option("--in", assess_in, "model strings, one per line")->required();
  assess_cmd->add_option("--out", assess_out, "output file (- for stdout)");
  assess_flags.attach(assess_cmd, true);

  auto* build = app.add_subcommand("build", "build the full database");
  std::string build_db;
  int build_max_nodes = 0;
  CommonAssessFlags build_flags;
  build->add_option("--db", build_db, "database directory")->required();
  build->add_option("--max-nodes", build_max_nodes, "largest vertex count")->required();
  build_flags.attach(build, true);

  auto* query = app.add_subcommand("query", "look one model up");
  std::string query_db, query_model;
  query->add_option("--db", query_db, "database directory")->required();
  query->add_option("--model", query_model, "model string")->required();

  auto* filter = app.add_subcommand("filter", "stream records matching conditions");
  std::string filter_db;
  std::vector<std::string> filter_atoms;
  filter->add_option("--db", filter_db, "database directory")->required();
  filter->add_option("--where", filter_atoms,
                     "condition atom, repeatable (n=, inputs=, leaks=, class=, "
                     "has=, all=, strongly-connected)");

  auto* explain = app.add_subcommand("explain", "print the ODE system and IO equation");
  std::string explain_model;
  explain->add_option("--model", explain_model, "model string")->required();

  auto* stats = app.add_subcommand("stats", "identifiability statistics");
  std::string stats_db, stats_by_dim = "nodes", stats_format = "csv";
  stats->add_option("--db", stats_db, "database directory")->required();
  stats->add_option("--by", stats_by_dim, "nodes|leaks|inputs");
  stats->add_option("--format", stats_format, "csv");

  auto* heatmap = app.add_subcommand("heatmap", "inputs x leaks heat grid");
  std::string heatmap_db, heatmap_class = "all", heatmap_out;
  heatmap->add_option("--db", heatmap_db, "database directory")->required();
  heatmap->add_option("--class", heatmap_class,
                      "all|globally|locally|nonidentifiable");
  heatmap->add_option("--out", heatmap_out, "SVG path (CSV written alongside)")
      ->required();

  auto* conjecture = app.add_subcommand("check-conjecture",
                                        "search for leak-removal counterexamples");
  std::string conj_db, conj_format = "text";
  int conj_max_nodes = 3;
  conjecture->add_option("--db", conj_db, "database directory")->required();
  conjecture->add_option("--max-nodes", conj_max_nodes, "scan ceiling");
  conjecture->add_option("--format", conj_format, "json|text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen_nodes, gen_max_inputs, gen_out);
    if (assess_cmd->parsed()) return run_assess(assess_in, assess_out, assess_flags, quiet);
    if (build->parsed()) return run_build(build_db, build_max_nodes, build_flags, quiet);
    if (query->parsed()) return run_query(query_db, query_model);
    if (filter->parsed()) return run_filter(filter_db, filter_atoms);
    if (explain->parsed()) return run_explain(explain_model);
    if (stats->parsed()) return run_stats(stats_db, stats_by_dim);
    if (heatmap->parsed()) return run_heatmap(heatmap_db, heatmap_class, heatmap_out);
    if (conjecture->parsed()) {
      return run_check_conjecture(conj_db, conj_max_nodes, conj_format);
    }
  } catch (const ParseError& e) {
    std::cerr << "model parse error: " << e.what() << '\n';
    return kExitModelParse;
  } catch (const ValidationError& e) {
    std::cerr << "invalid model: " << e.what() << '\n';
    return kExitModelParse;
  } catch (const NotFoundError& e) {
    std::cerr << e.what() << '\n';
    return kExitNotFound;
  } catch (const AssessmentError& e) {
    std::cerr << "assessment failed: " << e.what() << '\n';
    return kExitAssessment;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssessment;
  }
  return kExitUsage;
}
