#include "kpbit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "kpbit/rng.hpp"

namespace kpbit {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : adjacency_(n) {
  std::set<Edge> seen;
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(e).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  edges_ = std::move(edges);
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& adj : adjacency_) d = std::max(d, adj.size());
  return d;
}

Assignment::Assignment(std::size_t k, std::vector<State> states) : k_(k), states_(std::move(states)) {
  if (k_ == 0) throw std::invalid_argument("assignment needs k >= 1");
  for (State s : states_) {
    if (s >= k_) throw std::invalid_argument("state label out of range");
  }
}

void Assignment::set(std::size_t i, State s) {
  if (s >= k_) throw std::invalid_argument("state label out of range");
  states_.at(i) = s;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::uint64_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

bool is_number(std::string_view tok) {
  std::istringstream ss{std::string(tok)};
  double d = 0;
  ss >> d;
  return !ss.fail() && ss.eof();
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;

    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate 'p' header");
      if (tok.size() != 4 || tok[1] != "edge") throw ParseError(line_no, "expected 'p edge <n> <m>'");
      n = parse_count(tok[2], line_no, "node count");
      m = parse_count(tok[3], line_no, "edge count");
      if (n > (1ULL << 31)) throw ParseError(line_no, "node count too large");
      have_header = true;
      continue;
    }

    if (tok[0] == "e") {
      if (!have_header) throw ParseError(line_no, "edge before 'p' header");
      if (tok.size() != 3 && tok.size() != 4) throw ParseError(line_no, "expected 'e <u> <v> [w]'");
      if (tok.size() == 4 && !is_number(tok[3])) throw ParseError(line_no, "invalid edge weight");
      const auto u = parse_count(tok[1], line_no, "endpoint");
      const auto v = parse_count(tok[2], line_no, "endpoint");
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(line_no, "endpoint out of range");
      if (u == v) throw ParseError(line_no, "self-loop on node " + std::to_string(u));
      Edge e{static_cast<NodeId>(std::min(u, v) - 1), static_cast<NodeId>(std::max(u, v) - 1)};
      if (!seen.insert(e).second) {
        throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      }
      if (edges.size() == m) throw ParseError(line_no, "more edges than declared in header");
      edges.push_back(e);
      continue;
    }

    throw ParseError(line_no, "unrecognized line '" + line + "'");
  }

  if (!have_header) throw ParseError(line_no, "missing 'p edge' header");
  if (edges.size() != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  return Graph(n, std::move(edges));
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

Graph generate_random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  RngStream rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
  }
  return Graph(n, std::move(edges));
}

namespace {
void check_sizes(const Graph& g, const Assignment& a) {
  if (a.size() != g.num_nodes()) {
    throw std::invalid_argument("assignment size " + std::to_string(a.size()) + " does not match graph size " +
                                std::to_string(g.num_nodes()));
  }
}
}  // namespace

std::size_t cut_value(const Graph& g, const Assignment& a) {
  check_sizes(g, a);
  std::size_t cut = 0;
  for (const Edge& e : g.edges()) cut += a[e.u] != a[e.v];
  return cut;
}

std::int64_t energy(const Graph& g, const Assignment& a) {
  check_sizes(g, a);
  std::int64_t h = 0;
  // J_ij = -1 on every edge: H = sum_edges (2 [s_i == s_j] - 1).
  for (const Edge& e : g.edges()) h += a[e.u] == a[e.v] ? 1 : -1;
  return h;
}

}  // namespace kpbit
