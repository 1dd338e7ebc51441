#include "kpbit/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace kpbit {

OracleResult brute_force_max_k_cut(const Graph& g, std::size_t k, double limit) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::size_t n = g.num_nodes();
  const double space = std::pow(static_cast<double>(k), static_cast<double>(n));
  if (space > limit) {
    throw InstanceTooLarge(std::to_string(k) + "^" + std::to_string(n) + " assignments exceed the oracle limit");
  }
  if (n == 0) return {0, Assignment(k, {})};

  // Odometer over nodes 1..n-1 (node 0 pinned to label 0); the cut is
  // maintained incrementally as digits change.
  std::vector<State> states(n, 0);
  std::size_t cut = 0;
  auto relabel = [&](NodeId v, State to) {
    const State from = states[v];
    for (NodeId u : g.neighbors(v)) {
      cut -= states[u] != from;
      cut += states[u] != to;
    }
    states[v] = to;
  };

  OracleResult best{cut, Assignment(k, states)};
  while (true) {
    std::size_t pos = n - 1;
    while (pos > 0 && states[pos] + 1 == k) {
      relabel(static_cast<NodeId>(pos), 0);
      --pos;
    }
    if (pos == 0) break;
    relabel(static_cast<NodeId>(pos), states[pos] + 1);
    if (cut > best.cut) best = {cut, Assignment(k, states)};
  }
  return best;
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi-square needs at least two bins");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total <= 0.0) throw std::invalid_argument("chi-square needs a positive total count");

  const double expected = total / static_cast<double>(counts.size());
  ChiSquareResult r;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    r.statistic += d * d / expected;
  }
  r.dof = counts.size() - 1;
  const boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.critical = boost::math::quantile(boost::math::complement(dist, 0.001));
  r.pass = r.statistic < r.critical;
  return r;
}

}  // namespace kpbit
