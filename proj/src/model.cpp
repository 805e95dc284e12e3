#include "compartdb/model.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace compartdb {

bool Model::has_edge(int from, int to) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(from, to));
}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::string joined = "invalid model:";
        for (const auto& v : violations) {
          joined += "\n  - " + v;
        }
        return joined;
      }()),
      violations_(std::move(violations)) {}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

void check_vertex_list(const std::vector<int>& vs, int n, const char* what,
                       std::vector<std::string>& errs) {
  for (int v : vs) {
    if (v < 0 || v >= n) {
      errs.push_back(std::string(what) + " vertex " + std::to_string(v) +
                     " out of range [0, " + std::to_string(n) + ")");
    }
  }
  auto sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    errs.push_back(std::string("duplicate ") + what + " vertex");
  }
}

}  // namespace

Model validate(Model raw) {
  std::vector<std::string> errs;
  if (raw.n < 1) {
    errs.push_back("vertex count must be at least 1, got " + std::to_string(raw.n));
  }
  for (auto [i, j] : raw.edges) {
    if (i < 0 || i >= raw.n || j < 0 || j >= raw.n) {
      errs.push_back("edge " + std::to_string(i) + "->" + std::to_string(j) +
                     " has a vertex out of range [0, " + std::to_string(raw.n) + ")");
    } else if (i == j) {
      errs.push_back("self-loop at vertex " + std::to_string(i));
    }
  }
  std::sort(raw.edges.begin(), raw.edges.end());
  if (std::adjacent_find(raw.edges.begin(), raw.edges.end()) != raw.edges.end()) {
    errs.push_back("duplicate edge");
  }
  check_vertex_list(raw.inputs, raw.n, "input", errs);
  check_vertex_list(raw.outputs, raw.n, "output", errs);
  check_vertex_list(raw.leaks, raw.n, "leak", errs);
  if (!errs.empty()) {
    throw ValidationError(std::move(errs));
  }
  std::sort(raw.inputs.begin(), raw.inputs.end());
  std::sort(raw.outputs.begin(), raw.outputs.end());
  std::sort(raw.leaks.begin(), raw.leaks.end());
  return raw;
}

std::string ParamKey::name() const {
  if (kind == Kind::Edge) {
    return "a(" + std::to_string(from) + "->" + std::to_string(to) + ")";
  }
  return "leak(" + std::to_string(from) + ")";
}

ParamKey ParamKey::from_name(std::string_view name) {
  auto parse_int = [&](std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("bad parameter name: " + std::string(name));
    }
    return value;
  };
  if (name.starts_with("a(") && name.ends_with(")")) {
    auto body = name.substr(2, name.size() - 3);
    auto arrow = body.find("->");
    if (arrow != std::string_view::npos) {
      return edge(parse_int(body.substr(0, arrow)), parse_int(body.substr(arrow + 2)));
    }
  }
  if (name.starts_with("leak(") && name.ends_with(")")) {
    return leak(parse_int(name.substr(5, name.size() - 6)));
  }
  throw std::invalid_argument("bad parameter name: " + std::string(name));
}

std::vector<ParamKey> parameter_keys(const Model& m) {
  std::vector<ParamKey> keys;
  keys.reserve(m.edges.size() + m.leaks.size());
  for (auto [i, j] : m.edges) keys.push_back(ParamKey::edge(i, j));
  for (int v : m.leaks) keys.push_back(ParamKey::leak(v));
  return keys;
}

namespace {

// Reachable set from `start` along `adj`, as a bitmask (n <= 31 here).
std::uint32_t reach_mask(int n, const std::vector<std::vector<int>>& adj,
                         std::uint32_t start) {
  std::uint32_t seen = start;
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (start >> v & 1u) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!(seen >> w & 1u)) {
        seen |= 1u << w;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<std::vector<int>> out_adjacency(const Model& m) {
  std::vector<std::vector<int>> adj(m.n);
  for (auto [i, j] : m.edges) adj[i].push_back(j);
  return adj;
}

}  // namespace

bool weakly_connected(const Model& m) {
  std::vector<std::vector<int>> adj(m.n);
  for (auto [i, j] : m.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::uint32_t all = m.n == 32 ? ~0u : (1u << m.n) - 1;
  return reach_mask(m.n, adj, 1u) == all;
}

bool strongly_connected(const Model& m) {
  auto adj = out_adjacency(m);
  std::vector<std::vector<int>> radj(m.n);
  for (auto [i, j] : m.edges) radj[j].push_back(i);
  std::uint32_t all = m.n == 32 ? ~0u : (1u << m.n) - 1;
  return reach_mask(m.n, adj, 1u) == all && reach_mask(m.n, radj, 1u) == all;
}

bool all_reach_output(const Model& m) {
  std::vector<std::vector<int>> radj(m.n);
  for (auto [i, j] : m.edges) radj[j].push_back(i);
  std::uint32_t outs = 0;
  for (int o : m.outputs) outs |= 1u << o;
  if (outs == 0) return false;
  std::uint32_t all = m.n == 32 ? ~0u : (1u << m.n) - 1;
  return reach_mask(m.n, radj, outs) == all;
}

Model relabel(const Model& m, std::span<const int> perm) {
  Model out;
  out.n = m.n;
  out.edges.reserve(m.edges.size());
  for (auto [i, j] : m.edges) out.edges.emplace_back(perm[i], perm[j]);
  std::sort(out.edges.begin(), out.edges.end());
  auto map_set = [&](const std::vector<int>& vs) {
    std::vector<int> r;
    r.reserve(vs.size());
    for (int v : vs) r.push_back(perm[v]);
    std::sort(r.begin(), r.end());
    return r;
  };
  out.inputs = map_set(m.inputs);
  out.outputs = map_set(m.outputs);
  out.leaks = map_set(m.leaks);
  return out;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) inv[perm[v]] = int(v);
  return inv;
}

namespace {

void append_int(std::string& s, int v) {
  char buf[12];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, ptr);
}

void append_list(std::string& s, const std::vector<int>& vs) {
  s.push_back('[');
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k) s.push_back(',');
    append_int(s, vs[k]);
  }
  s.push_back(']');
}

void format_into(const Model& m, std::string& s) {
  s.clear();
  s += "graph=[";
  std::vector<int> nbrs;
  for (int i = 0; i < m.n; ++i) {
    if (i) s.push_back(',');
    nbrs.clear();
    for (auto [a, b] : m.edges) {
      if (a == i) nbrs.push_back(b);
    }
    append_list(s, nbrs);
  }
  s += "];in=";
  append_list(s, m.inputs);
  s += ";out=";
  append_list(s, m.outputs);
  s += ";leak=";
  append_list(s, m.leaks);
}

}  // namespace

std::string format_model(const Model& m) {
  std::string s;
  format_into(m, s);
  return s;
}

CanonicalForm canonicalize(const Model& m) {
  if (m.n > 8) {
    throw std::invalid_argument(
        "canonicalize: n > 8 exceeds the factorial-search ceiling");
  }
  std::vector<int> perm(m.n);
  std::iota(perm.begin(), perm.end(), 0);

  CanonicalForm best;
  best.canonical = relabel(m, perm);
  best.permutation = perm;
  format_into(best.canonical, best.key);

  std::string candidate;
  while (std::next_permutation(perm.begin(), perm.end())) {
    Model relabeled = relabel(m, perm);
    format_into(relabeled, candidate);
    if (candidate < best.key) {
      best.canonical = std::move(relabeled);
      best.permutation = perm;
      best.key = candidate;
    }
  }
  return best;
}

Model remove_leak(const Model& m, int vertex) {
  auto it = std::find(m.leaks.begin(), m.leaks.end(), vertex);
  if (it == m.leaks.end()) {
    throw std::invalid_argument("remove_leak: vertex " + std::to_string(vertex) +
                                " is not a leak");
  }
  Model out = m;
  out.leaks.erase(out.leaks.begin() + (it - m.leaks.begin()));
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Model run() {
    Model m;
    expect("graph=[");
    if (peek() == ']') {
      fail("graph must list at least one vertex");
    }
    std::vector<std::vector<int>> adj;
    adj.push_back(parse_list());
    while (peek() == ',') {
      ++pos_;
      adj.push_back(parse_list());
    }
    expect("];in=");
    m.inputs = parse_list();
    expect(";out=");
    m.outputs = parse_list();
    expect(";leak=");
    m.leaks = parse_list();
    if (pos_ != text_.size()) {
      fail("trailing characters");
    }
    m.n = int(adj.size());
    for (int i = 0; i < m.n; ++i) {
      for (int j : adj[i]) m.edges.emplace_back(i, j);
    }
    return validate(std::move(m));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) != lit) {
      fail("expected \"" + std::string(lit) + "\"");
    }
    pos_ += lit.size();
  }

  int parse_int() {
    int value = 0;
    auto* begin = text_.data() + pos_;
    auto* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) {
      fail("expected a number");
    }
    if (*begin == '0' && ptr - begin > 1) {
      fail("leading zero");
    }
    pos_ += std::size_t(ptr - begin);
    return value;
  }

  // "[a,b,...]" with strictly ascending entries.
  std::vector<int> parse_list() {
    expect("[");
    std::vector<int> vs;
    if (peek() != ']') {
      vs.push_back(parse_int());
      while (peek() == ',') {
        ++pos_;
        int v = parse_int();
        if (v <= vs.back()) {
          fail("list entries must be strictly ascending");
        }
        vs.push_back(v);
      }
    }
    expect("]");
    return vs;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Model parse_model(std::string_view text) { return Parser(text).run(); }

}  // namespace compartdb
