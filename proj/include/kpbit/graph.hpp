#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpbit {

using NodeId = std::uint32_t;
using State = std::uint32_t;

/// Undirected edge, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected, unweighted simple graph. Every edge carries coupling -1
/// (antiferromagnetic), so the coupling matrix is never stored.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops, duplicates or endpoints
  /// outside [0, n). Edge order is preserved.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_nodes() == b.num_nodes() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Per-node state labels in [0, k). Label i stands for the unit vector e_i,
/// so the dot product of two node states is 1 when the labels match and 0
/// otherwise.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::size_t k, std::vector<State> states);

  std::size_t k() const { return k_; }
  std::size_t size() const { return states_.size(); }
  State operator[](std::size_t i) const { return states_[i]; }
  std::span<const State> states() const { return states_; }

  void set(std::size_t i, State s);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<State> states_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the DIMACS-like edge format ("c" comments, one "p edge n m"
/// header, m "e u v [w]" lines, 1-based node ids). Throws ParseError.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);

/// Writes `g` in the format accepted by parse_graph. `comment` lines, if
/// any, are emitted as "c ..." before the header.
void write_graph(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {});

/// G(n, p): every unordered pair is included independently with
/// probability p, in lexicographic pair order, from a stream seeded by `seed`.
Graph generate_random_graph(std::size_t n, double p, std::uint64_t seed);

/// Number of edges whose endpoints carry different labels.
std::size_t cut_value(const Graph& g, const Assignment& a);

/// H = -sum_{i<j} J_ij (2 s_i.s_j - 1) with J = -1 on edges.
/// Always equals |E| - 2 * cut_value(g, a).
std::int64_t energy(const Graph& g, const Assignment& a);

}  // namespace kpbit
