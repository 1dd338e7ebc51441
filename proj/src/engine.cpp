#include "kpbit/engine.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kpbit/pbit.hpp"
#include "parallel.hpp"

namespace kpbit {

double BetaSchedule::at(std::size_t t, std::size_t total) const {
  if (kind == Kind::Constant || total <= 1) return beta_start;
  const double frac = static_cast<double>(t) / static_cast<double>(total - 1);
  return beta_start + (beta_end - beta_start) * frac;
}

void BetaSchedule::validate() const {
  if (!(beta_start >= 0.0) || !(beta_end >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (kind == Kind::Constant && beta_start != beta_end) {
    throw std::invalid_argument("constant schedule needs beta_start == beta_end");
  }
}

void EngineConfig::validate() const {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  schedule.validate();
}

double synaptic_input(const Graph& g, const Assignment& a, NodeId alpha) {
  if (alpha >= g.num_nodes()) throw std::out_of_range("node index out of range");
  const State own = a[alpha];
  std::int64_t phi = 0;
  for (NodeId j : g.neighbors(alpha)) phi += a[j] == own ? -1 : 1;
  return static_cast<double>(phi);
}

State kstate_transition(State current, std::size_t k, double phi, double beta, RngStream& rng) {
  if (retain_decision(phi, beta, rng)) return current;
  // The shared multi-state p-bit is only consulted on a switch.
  const auto j = static_cast<State>(sample_one_hot(k - 1, rng));
  return j < current ? j : j + 1;
}

void update_node(const Graph& g, Assignment& a, NodeId alpha, double beta, RngStream& rng) {
  const double phi = synaptic_input(g, a, alpha);
  a.set(alpha, kstate_transition(a[alpha], a.k(), phi, beta, rng));
}

namespace {

void shuffle(std::vector<NodeId>& order, RngStream& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(i));
    std::swap(order[i - 1], order[j]);
  }
}

void sweep_with(const Graph& g, Assignment& a, double beta, RngStream& rng, UpdateOrder order,
                std::vector<NodeId>& scratch) {
  std::iota(scratch.begin(), scratch.end(), NodeId{0});
  if (order == UpdateOrder::RandomPermutation) shuffle(scratch, rng);
  for (NodeId v : scratch) update_node(g, a, v, beta, rng);
}

}  // namespace

void sweep(const Graph& g, Assignment& a, double beta, RngStream& rng, UpdateOrder order) {
  if (a.size() != g.num_nodes()) throw std::invalid_argument("assignment size does not match graph");
  std::vector<NodeId> scratch(g.num_nodes());
  sweep_with(g, a, beta, rng, order, scratch);
}

TrialResult run_trial(const Graph& g, const EngineConfig& cfg, std::size_t trial_index) {
  cfg.validate();
  RngStream rng = RngStream::derive(cfg.master_seed, trial_index);

  std::vector<State> init(g.num_nodes());
  for (auto& s : init) s = static_cast<State>(rng.uniform_int(cfg.k));
  Assignment a(cfg.k, std::move(init));

  TrialResult result;
  result.cut_trace.reserve(cfg.sweeps);
  std::vector<NodeId> scratch(g.num_nodes());
  bool have_best = false;
  for (std::size_t t = 0; t < cfg.sweeps; ++t) {
    sweep_with(g, a, cfg.schedule.at(t, cfg.sweeps), rng, cfg.order, scratch);
    const std::size_t cut = cut_value(g, a);
    result.cut_trace.push_back(cut);
    if (!have_best || cut > result.best_cut) {
      result.best_cut = cut;
      result.best_assignment = a;
      have_best = true;
    }
  }
  return result;
}

void summarize(TrialBatch& batch) {
  batch.histogram.clear();
  batch.max_best = 0;
  double total = 0.0;
  for (const auto& t : batch.trials) {
    ++batch.histogram[t.best_cut];
    batch.max_best = std::max(batch.max_best, t.best_cut);
    total += static_cast<double>(t.best_cut);
  }
  batch.mean_best = batch.trials.empty() ? 0.0 : total / static_cast<double>(batch.trials.size());
}

TrialBatch run_trials(const Graph& g, const EngineConfig& cfg) {
  cfg.validate();
  TrialBatch batch;
  batch.trials.resize(cfg.trials);
  detail::parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) { batch.trials[i] = run_trial(g, cfg, i); });
  summarize(batch);
  return batch;
}

std::vector<ProbCurveRow> probcurve(std::size_t k, double beta, const std::vector<double>& phi_grid,
                                    std::size_t samples, RngStream& rng) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");

  std::vector<ProbCurveRow> rows;
  rows.reserve(phi_grid.size());
  const double n = static_cast<double>(samples);
  for (double phi : phi_grid) {
    std::vector<std::uint64_t> counts(k, 0);
    for (std::size_t s = 0; s < samples; ++s) ++counts[kstate_transition(0, k, phi, beta, rng)];

    ProbCurveRow row;
    row.phi = phi;
    row.p_retain_mc = static_cast<double>(counts[0]) / n;
    row.p_retain_analytic = retention_probability(phi, beta);
    for (std::size_t c = 1; c < k; ++c) row.p_alt_mc.push_back(static_cast<double>(counts[c]) / n);
    row.p_alt_analytic = (1.0 - std::tanh(beta * phi)) / (2.0 * static_cast<double>(k - 1));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kpbit
