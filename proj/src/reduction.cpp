#include "kpbit/reduction.hpp"

#include <numeric>
#include <stdexcept>

#include "kpbit/pbit.hpp"
#include "parallel.hpp"

namespace kpbit {

IsingModel::IsingModel(std::size_t n_spins) : neighbors_(n_spins), biases_(n_spins, 0.0) {}

double IsingModel::coupling(std::uint32_t i, std::uint32_t j) const {
  for (const Neighbor& nb : neighbors_.at(i)) {
    if (nb.spin == j) return couplings_[nb.coupling].weight;
  }
  return 0.0;
}

void IsingModel::add_coupling(std::uint32_t i, std::uint32_t j, double w) {
  if (i == j) throw std::invalid_argument("coupling on the diagonal");
  if (i >= n_spins() || j >= n_spins()) throw std::out_of_range("spin index out of range");
  if (i > j) std::swap(i, j);
  for (const Neighbor& nb : neighbors_[i]) {
    if (nb.spin == j) {
      couplings_[nb.coupling].weight += w;
      return;
    }
  }
  neighbors_[i].push_back({j, couplings_.size()});
  neighbors_[j].push_back({i, couplings_.size()});
  couplings_.push_back({i, j, w});
}

double IsingModel::local_field(std::uint32_t i, std::span<const Spin> s) const {
  double field = biases_[i];
  for (const Neighbor& nb : neighbors_[i]) field += couplings_[nb.coupling].weight * s[nb.spin];
  return field;
}

Penalties default_penalties(const Graph& g) {
  return {static_cast<double>(g.max_degree()) + 1.0, 1.0};
}

namespace {

// Accumulates a QUBO term q x_i x_j (or l x_i) into Ising form using
// x = (1 + s) / 2, with E = -sum J s s - sum h s + offset.
void add_quadratic(IsingModel& m, std::uint32_t i, std::uint32_t j, double q) {
  m.add_coupling(i, j, -q / 4.0);
  m.add_bias(i, -q / 4.0);
  m.add_bias(j, -q / 4.0);
  m.add_offset(q / 4.0);
}

void add_linear(IsingModel& m, std::uint32_t i, double l) {
  m.add_bias(i, -l / 2.0);
  m.add_offset(l / 2.0);
}

}  // namespace

OneHotEncoding encode_one_hot(const Graph& g, std::size_t k, double a, double b) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("penalty weights must be positive");

  EncodingMap map{g.num_nodes(), k, a, b};
  IsingModel model(map.n_spins());

  // A (sum_c x_c - 1)^2 = A (1 - sum_c x_c + 2 sum_{c<d} x_c x_d) using x^2 = x.
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    model.add_offset(a);
    for (State c = 0; c < k; ++c) {
      add_linear(model, map.spin_index(v, c), -a);
      for (State d = c + 1; d < k; ++d) add_quadratic(model, map.spin_index(v, c), map.spin_index(v, d), 2.0 * a);
    }
  }
  for (const Edge& e : g.edges()) {
    for (State c = 0; c < k; ++c) add_quadratic(model, map.spin_index(e.u, c), map.spin_index(e.v, c), b);
  }
  return {std::move(model), map};
}

double ising_energy(const IsingModel& m, std::span<const Spin> s) {
  if (s.size() != m.n_spins()) throw std::invalid_argument("spin vector size does not match model");
  double e = m.offset();
  for (const Coupling& c : m.couplings()) e -= c.weight * s[c.i] * s[c.j];
  for (std::size_t i = 0; i < s.size(); ++i) e -= m.biases()[i] * s[i];
  return e;
}

std::vector<Spin> encode_assignment(const Assignment& a, const EncodingMap& map) {
  if (a.size() != map.nodes || a.k() != map.k) throw std::invalid_argument("assignment does not match encoding");
  std::vector<Spin> s(map.n_spins(), Spin{-1});
  for (NodeId v = 0; v < map.nodes; ++v) s[map.spin_index(v, a[v])] = 1;
  return s;
}

Assignment decode(std::span<const Spin> s, const EncodingMap& map, RepairRule rule, RngStream& rng) {
  if (s.size() != map.n_spins()) throw std::invalid_argument("spin vector size does not match encoding");
  std::vector<State> states(map.nodes);
  for (NodeId v = 0; v < map.nodes; ++v) {
    std::size_t hot = 0;
    State first = 0;
    for (State c = map.k; c-- > 0;) {
      if (s[map.spin_index(v, c)] > 0) {
        ++hot;
        first = c;
      }
    }
    if (hot == 1 || (hot > 1 && rule == RepairRule::FirstHot)) {
      states[v] = first;
    } else {
      states[v] = static_cast<State>(rng.uniform_int(map.k));
    }
  }
  return Assignment(map.k, std::move(states));
}

BaselineTrialResult run_two_state_trial(const Graph& g, const OneHotEncoding& enc, const EngineConfig& cfg,
                                        RepairRule repair, std::size_t trial_index) {
  if (cfg.sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
  cfg.schedule.validate();
  if (enc.map.nodes != g.num_nodes()) throw std::invalid_argument("encoding does not match graph");

  const IsingModel& model = enc.model;
  const std::size_t n = model.n_spins();
  RngStream rng = RngStream::derive(cfg.master_seed, trial_index);

  std::vector<Spin> s(n);
  for (auto& x : s) x = rng.uniform_int(2) == 0 ? Spin{-1} : Spin{1};

  BaselineTrialResult result;
  result.cut_trace.reserve(cfg.sweeps);
  result.energy_trace.reserve(cfg.sweeps);
  std::vector<std::uint32_t> order(n);
  bool have_best = false;
  for (std::size_t t = 0; t < cfg.sweeps; ++t) {
    const double beta = cfg.schedule.at(t, cfg.sweeps);
    std::iota(order.begin(), order.end(), 0u);
    if (cfg.order == UpdateOrder::RandomPermutation) {
      for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_int(i)]);
    }
    for (std::uint32_t i : order) s[i] = static_cast<Spin>(two_state_update(model.local_field(i, s), beta, rng));

    Assignment decoded = decode(s, enc.map, repair, rng);
    const std::size_t cut = cut_value(g, decoded);
    result.cut_trace.push_back(cut);
    result.energy_trace.push_back(ising_energy(model, s));
    if (!have_best || cut > result.best_cut) {
      result.best_cut = cut;
      result.best_assignment = std::move(decoded);
      have_best = true;
    }
  }
  result.final_spins = std::move(s);
  return result;
}

BaselineBatch run_baseline_trials(const Graph& g, const OneHotEncoding& enc, const EngineConfig& cfg,
                                  RepairRule repair) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  BaselineBatch batch;
  batch.trials.resize(cfg.trials);
  detail::parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
    batch.trials[i] = run_two_state_trial(g, enc, cfg, repair, i);
  });
  double total = 0.0;
  for (const auto& t : batch.trials) {
    ++batch.histogram[t.best_cut];
    batch.max_best = std::max(batch.max_best, t.best_cut);
    total += static_cast<double>(t.best_cut);
  }
  batch.mean_best = total / static_cast<double>(batch.trials.size());
  return batch;
}

}  // namespace kpbit
