#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kpbit/graph.hpp"
#include "kpbit/rng.hpp"

namespace kpbit {

/// Inverse-temperature schedule over a fixed sweep budget.
struct BetaSchedule {
  enum class Kind { Constant, Linear };

  Kind kind = Kind::Constant;
  double beta_start = 1.0;
  double beta_end = 1.0;

  static BetaSchedule constant(double beta) { return {Kind::Constant, beta, beta}; }
  static BetaSchedule linear(double from, double to) { return {Kind::Linear, from, to}; }

  /// Beta for sweep t (0-based) of `total` sweeps. The ramp hits beta_end
  /// on the last sweep; a single sweep uses beta_start.
  double at(std::size_t t, std::size_t total) const;

  void validate() const;
};

enum class UpdateOrder { RandomPermutation, Fixed };

struct EngineConfig {
  std::size_t k = 3;
  std::size_t sweeps = 1000;
  std::size_t trials = 100;
  BetaSchedule schedule = BetaSchedule::constant(1.0);
  UpdateOrder order = UpdateOrder::RandomPermutation;
  std::uint64_t master_seed = 0;
  /// Worker threads for run_trials. Never changes results.
  std::size_t threads = 1;

  /// Throws std::invalid_argument unless k >= 2, sweeps >= 1, trials >= 1.
  void validate() const;
};

struct TrialResult {
  std::size_t best_cut = 0;
  Assignment best_assignment;
  /// Cut after each sweep.
  std::vector<std::size_t> cut_trace;
};

struct TrialBatch {
  std::vector<TrialResult> trials;
  /// best cut -> number of trials.
  std::map<std::size_t, std::size_t> histogram;
  double mean_best = 0.0;
  std::size_t max_best = 0;
};

/// phi_alpha = sum_j J_alpha,j (2 s_alpha.s_j - 1) with J = -1 on edges, i.e.
/// (#neighbors in a different state) - (#neighbors in the same state).
double synaptic_input(const Graph& g, const Assignment& a, NodeId alpha);

/// One K-state p-bit transition for a node currently in `current`.
/// Retains with probability (1 + tanh(beta * phi)) / 2; otherwise moves to
/// the j-th of the other k-1 states in increasing label order, with j
/// drawn from a uniform one-hot vector. The one-hot draw only happens on a
/// switch.
State kstate_transition(State current, std::size_t k, double phi, double beta, RngStream& rng);

/// Applies kstate_transition to node alpha in place. No other entry changes.
void update_node(const Graph& g, Assignment& a, NodeId alpha, double beta, RngStream& rng);

/// One update of every node. RandomPermutation draws a fresh permutation
/// from `rng` on each call.
void sweep(const Graph& g, Assignment& a, double beta, RngStream& rng, UpdateOrder order);

/// A single annealing run from a uniform random start, using the stream
/// RngStream::derive(cfg.master_seed, trial_index).
TrialResult run_trial(const Graph& g, const EngineConfig& cfg, std::size_t trial_index);

/// cfg.trials independent runs, returned in trial-index order regardless
/// of cfg.threads.
TrialBatch run_trials(const Graph& g, const EngineConfig& cfg);

/// Summarizes per-trial best cuts into histogram, mean and max.
void summarize(TrialBatch& batch);

struct ProbCurveRow {
  double phi = 0.0;
  double p_retain_mc = 0.0;
  double p_retain_analytic = 0.0;
  /// Frequencies of the k-1 alternative states, in increasing label order.
  std::vector<double> p_alt_mc;
  /// (1 - tanh(beta * phi)) / (2 (k - 1)).
  double p_alt_analytic = 0.0;
};

/// Single-node transition statistics from start state 0 for each phi in
/// the grid, `samples` independent updates per point.
std::vector<ProbCurveRow> probcurve(std::size_t k, double beta, const std::vector<double>& phi_grid,
                                    std::size_t samples, RngStream& rng);

}  // namespace kpbit
