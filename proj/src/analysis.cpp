#include "compartdb/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace compartdb {

long StatsTable::total() const {
  long t = 0;
  for (const auto& [g, row] : rows) t += row[0] + row[1] + row[2];
  return t;
}

StatsTable stats_by(const Database& db, StatsDim dim) {
  StatsTable table;
  table.dim = dim;
  for (const auto& [key, record] : db.records()) {
    int group = 0;
    switch (dim) {
      case StatsDim::Nodes: group = record.model.n; break;
      case StatsDim::Leaks: group = int(record.model.leaks.size()); break;
      case StatsDim::Inputs: group = int(record.model.inputs.size()); break;
    }
    table.rows[group][std::size_t(model_class(record))] += 1;
  }
  return table;
}

namespace {

const char* dim_name(StatsDim dim) {
  switch (dim) {
    case StatsDim::Nodes: return "nodes";
    case StatsDim::Leaks: return "leaks";
    case StatsDim::Inputs: return "inputs";
  }
  return "?";
}

}  // namespace

std::string stats_csv(const StatsTable& table) {
  std::ostringstream out;
  out << dim_name(table.dim) << ",globally,locally,nonidentifiable\n";
  for (const auto& [group, row] : table.rows) {
    out << group << ',' << row[0] << ',' << row[1] << ',' << row[2] << '\n';
  }
  return out.str();
}

long HeatGrid::total() const {
  long t = 0;
  for (const auto& row : cells) {
    for (long c : row) t += c;
  }
  return t;
}

HeatGrid heatmap_grid(const Database& db, std::optional<ModelClass> class_filter) {
  HeatGrid grid;
  for (const auto& [key, record] : db.records()) {
    grid.max_inputs = std::max(grid.max_inputs, int(record.model.inputs.size()));
    grid.max_leaks = std::max(grid.max_leaks, int(record.model.leaks.size()));
  }
  grid.cells.assign(std::size_t(grid.max_inputs) + 1,
                    std::vector<long>(std::size_t(grid.max_leaks) + 1, 0));
  for (const auto& [key, record] : db.records()) {
    if (class_filter && model_class(record) != *class_filter) continue;
    grid.cells[record.model.inputs.size()][record.model.leaks.size()] += 1;
  }
  return grid;
}

std::string heatmap_csv(const HeatGrid& grid) {
  std::ostringstream out;
  out << "inputs\\leaks";
  for (int l = 0; l <= grid.max_leaks; ++l) out << ',' << l;
  out << '\n';
  for (int i = 0; i <= grid.max_inputs; ++i) {
    out << i;
    for (int l = 0; l <= grid.max_leaks; ++l) {
      out << ',' << grid.cells[std::size_t(i)][std::size_t(l)];
    }
    out << '\n';
  }
  return out.str();
}

std::string heatmap_svg(const HeatGrid& grid, const std::string& title) {
  const int cell = 64, left = 96, top = 72, gap = 2;
  const int width = left + (grid.max_leaks + 1) * (cell + gap) + 24;
  const int height = top + (grid.max_inputs + 1) * (cell + gap) + 24;
  long peak = 1;
  for (const auto& row : grid.cells) {
    for (long c : row) peak = std::max(peak, c);
  }
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";
  svg << "<text x=\"" << left << "\" y=\"48\" font-family=\"sans-serif\" "
         "font-size=\"12\">columns: leaks, rows: inputs</text>\n";
  for (int i = 0; i <= grid.max_inputs; ++i) {
    int y = top + i * (cell + gap);
    svg << "<text x=\"" << left - 40 << "\" y=\"" << y + cell / 2 + 4
        << "\" font-family=\"sans-serif\" font-size=\"13\">in=" << i
        << "</text>\n";
    for (int l = 0; l <= grid.max_leaks; ++l) {
      int x = left + l * (cell + gap);
      long v = grid.cells[std::size_t(i)][std::size_t(l)];
      // White through steel blue, linear in count / peak.
      double f = double(v) / double(peak);
      int r = int(255 - f * (255 - 33));
      int g = int(255 - f * (255 - 102));
      int b = int(255 - f * (255 - 172));
      if (i == 0) {
        svg << "<text x=\"" << x + cell / 2 << "\" y=\"" << top - 10
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"13\">lk="
            << l << "</text>\n";
      }
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\"rgb(" << r << ',' << g << ','
          << b << ")\" stroke=\"#888\"/>\n";
      svg << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"12\" fill=\""
          << (f > 0.6 ? "#fff" : "#222") << "\">" << v << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<Counterexample> check_leak_removal_conjecture(
    const Database& db, int max_nodes, const AssessConfig& fallback_cfg) {
  std::vector<Counterexample> out;
  for (const auto& [key, record] : db.records()) {
    const Model& m = record.model;
    if (m.n > max_nodes) continue;
    if (m.leaks.size() != 1 || m.inputs.empty()) continue;
    if (!strongly_connected(m)) continue;
    if (model_class(record) == ModelClass::NonIdentifiable) continue;

    Model reduced = remove_leak(m, m.leaks[0]);
    std::map<ParamKey, IdStatus> post;
    try {
      post = db.get(reduced);
    } catch (const NotFoundError&) {
      // Assess the reduced class directly rather than skipping; assess
      // reports statuses in the labels of the model it is handed.
      post = assess(reduced, fallback_cfg).statuses;
    }
    bool broke = false;
    for (const auto& [k, status] : post) {
      if (status == IdStatus::NonIdentifiable) {
        broke = true;
        break;
      }
    }
    if (broke) {
      out.push_back({m, record.statuses, std::move(post)});
    }
  }
  return out;
}

EdgeObservationReport edge_identifiability_report(const Database& db,
                                                  int max_violations) {
  EdgeObservationReport report;
  auto tally = [&](EdgeObservationReport::Reading& reading,
                   const AssessmentRecord& record, int i, int j) {
    reading.edges += 1;
    IdStatus s = record.statuses.at(ParamKey::edge(i, j));
    if (s == IdStatus::Globally) {
      reading.globally += 1;
    } else if (int(reading.violations.size()) < max_violations) {
      reading.violations.push_back(record.key + " " + ParamKey::edge(i, j).name() +
                                   "=" + to_string(s));
    }
  };
  for (const auto& [key, record] : db.records()) {
    const Model& m = record.model;
    for (auto [i, j] : m.edges) {
      bool input_at_i =
          std::binary_search(m.inputs.begin(), m.inputs.end(), i);
      if (!input_at_i) continue;
      bool j_is_output =
          std::binary_search(m.outputs.begin(), m.outputs.end(), j);
      if (j_is_output) tally(report.output_directly, record, i, j);
      bool j_edge_to_output = false;
      for (int o : m.outputs) {
        if (m.has_edge(j, o)) {
          j_edge_to_output = true;
          break;
        }
      }
      if (j_edge_to_output) tally(report.edge_to_output, record, i, j);
    }
  }
  return report;
}

}  // namespace compartdb
