#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "kpbit/graph.hpp"

namespace kpbit {

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  std::size_t cut = 0;
  Assignment assignment;
};

inline constexpr double kDefaultOracleLimit = 1e8;

/// Exhaustive Max-K-Cut with node 0 pinned to label 0. Ties go to the
/// lexicographically smallest assignment. Throws InstanceTooLarge when
/// k^n exceeds `limit`.
OracleResult brute_force_max_k_cut(const Graph& g, std::size_t k, double limit = kDefaultOracleLimit);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  /// Upper 0.001 quantile of chi-square with `dof` degrees of freedom.
  double critical = 0.0;
  bool pass = false;
};

/// Pearson goodness of fit against equal bin probabilities, significance 0.001.
/// Throws std::invalid_argument with fewer than two bins or a zero total.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

}  // namespace kpbit
