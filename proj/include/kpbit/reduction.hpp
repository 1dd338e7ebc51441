#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kpbit/engine.hpp"
#include "kpbit/graph.hpp"
#include "kpbit/rng.hpp"

namespace kpbit {

using Spin = std::int8_t;

struct Coupling {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double weight = 0.0;
};

/// E(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset, s_i in {-1, +1}.
/// Couplings are stored sparsely; each pair appears at most once with i < j.
class IsingModel {
 public:
  explicit IsingModel(std::size_t n_spins = 0);

  std::size_t n_spins() const { return biases_.size(); }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  const std::vector<double>& biases() const { return biases_; }
  double offset() const { return offset_; }

  /// J_ij, zero when absent.
  double coupling(std::uint32_t i, std::uint32_t j) const;

  /// Adds `w` to J_ij (= J_ji). i != j.
  void add_coupling(std::uint32_t i, std::uint32_t j, double w);
  void add_bias(std::uint32_t i, double h) { biases_.at(i) += h; }
  void add_offset(double c) { offset_ += c; }

  /// h_i + sum_j J_ij s_j.
  double local_field(std::uint32_t i, std::span<const Spin> s) const;

 private:
  struct Neighbor {
    std::uint32_t spin;
    std::size_t coupling;
  };

  std::vector<Coupling> couplings_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<double> biases_;
  double offset_ = 0.0;
};

/// Spin index of (node, state) is node * k + state.
struct EncodingMap {
  std::size_t nodes = 0;
  std::size_t k = 0;
  double penalty_a = 0.0;
  double penalty_b = 0.0;

  std::size_t n_spins() const { return nodes * k; }
  std::uint32_t spin_index(NodeId v, State c) const { return static_cast<std::uint32_t>(v * k + c); }
};

struct OneHotEncoding {
  IsingModel model;
  EncodingMap map;
};

struct Penalties {
  double a = 0.0;
  double b = 0.0;
};

/// B = 1, A = max_degree + 1.
Penalties default_penalties(const Graph& g);

/// Max-K-Cut as an Ising model over N*K spins: the binary objective
///   A sum_v (sum_c x_vc - 1)^2 + B sum_{(u,v) in E} sum_c x_uc x_vc
/// rewritten with x = (1 + s) / 2. Feasible (one-hot) configurations have
/// energy B (|E| - cut).
OneHotEncoding encode_one_hot(const Graph& g, std::size_t k, double a, double b);

double ising_energy(const IsingModel& m, std::span<const Spin> s);

enum class RepairRule { Random, FirstHot };

/// Spin image of an assignment: +1 on (v, a[v]), -1 elsewhere.
std::vector<Spin> encode_assignment(const Assignment& a, const EncodingMap& map);

/// Rows with exactly one hot spin map to that state. Other rows are
/// repaired: Random draws a uniform state from `rng`; FirstHot takes the
/// lowest hot index and falls back to a uniform draw for an all-cold row.
Assignment decode(std::span<const Spin> s, const EncodingMap& map, RepairRule rule, RngStream& rng);

struct BaselineTrialResult {
  std::size_t best_cut = 0;
  Assignment best_assignment;
  std::vector<std::size_t> cut_trace;
  std::vector<double> energy_trace;
  std::vector<Spin> final_spins;
};

struct BaselineBatch {
  std::vector<BaselineTrialResult> trials;
  std::map<std::size_t, std::size_t> histogram;
  double mean_best = 0.0;
  std::size_t max_best = 0;
};

/// Conventional 2-state p-bit annealing on the reduced model. One sweep
/// updates all N*K spins; after every sweep the spins are decoded (with
/// repair) and the cut of the decoded assignment is recorded. cfg.k is not
/// consulted; the encoding carries K.
BaselineTrialResult run_two_state_trial(const Graph& g, const OneHotEncoding& enc, const EngineConfig& cfg,
                                        RepairRule repair, std::size_t trial_index);

BaselineBatch run_baseline_trials(const Graph& g, const OneHotEncoding& enc, const EngineConfig& cfg,
                                  RepairRule repair);

}  // namespace kpbit
