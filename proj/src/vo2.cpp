#include "kpbit/vo2.hpp"

#include <cmath>
#include <sstream>

namespace kpbit {

void Vo2Device::validate() const {
  if (!(r_met > 0.0) || !(r_ins > r_met)) throw std::invalid_argument("need r_ins > r_met > 0");
  if (!(i_trig_nominal > 0.0) || !(i_hold_nominal > 0.0)) {
    throw std::invalid_argument("trigger and hold currents must be positive");
  }
  if (!(sigma_trig >= 0.0)) throw std::invalid_argument("sigma_trig must be >= 0");
}

MultiStateCell MultiStateCell::uniform(std::size_t m, const Vo2Device& device, double r_series, double i_source) {
  MultiStateCell cell{std::vector<Vo2Device>(m, device), r_series, i_source};
  cell.validate();
  return cell;
}

void MultiStateCell::validate() const {
  if (branches.empty()) throw std::invalid_argument("cell needs at least one branch");
  if (!(r_series >= 0.0)) throw std::invalid_argument("r_series must be >= 0");
  if (!(i_source >= 0.0)) throw std::invalid_argument("i_source must be >= 0");
  for (const auto& b : branches) b.validate();
}

double sample_trigger(const Vo2Device& dev, RngStream& rng) {
  if (dev.sigma_trig == 0.0) return dev.i_trig_nominal;
  double it = 0.0;
  do {
    it = dev.i_trig_nominal + dev.sigma_trig * rng.normal();
  } while (it <= 0.0);
  return it;
}

CurrentBounds current_bounds(const MultiStateCell& cell) {
  // Only what the formula needs; an empty window is reported, not thrown.
  if (cell.branches.empty()) throw std::invalid_argument("cell needs at least one branch");
  const Vo2Device& d = cell.branches.front();
  const double m = static_cast<double>(cell.size());
  const double met = d.r_met + cell.r_series;
  const double ins = d.r_ins + cell.r_series;
  if (!(met > 0.0)) throw std::invalid_argument("metallic branch resistance must be positive");
  // [(M-1)(R_M+R) + (R_I+R)] / (R_M+R) = M + (R_I - R_M) / (R_M+R)
  const double lower = m * d.i_trig_nominal;
  return {lower, lower + (ins - met) / met * d.i_trig_nominal};
}

std::vector<double> steady_state_currents(const MultiStateCell& cell, std::size_t metallic) {
  cell.validate();
  const std::size_t m = cell.size();
  std::vector<double> g(m);
  for (std::size_t b = 0; b < m; ++b) {
    const auto& d = cell.branches[b];
    g[b] = 1.0 / ((b == metallic ? d.r_met : d.r_ins) + cell.r_series);
  }
  double total = 0.0;
  for (double x : g) total += x;
  const double v = cell.i_source / total;
  std::vector<double> i(m);
  for (std::size_t b = 0; b < m; ++b) i[b] = v * g[b];
  return i;
}

namespace {
std::string amps(double i) {
  std::ostringstream ss;
  ss.precision(6);
  ss << i * 1e6 << " uA";
  return ss.str();
}
}  // namespace

Selection resolve_selection(const MultiStateCell& cell, RngStream& rng) {
  const CurrentBounds bounds = current_bounds(cell);
  if (!(cell.i_source > bounds.lower)) {
    throw CircuitError(CircuitError::Kind::NoSelection,
                       "source " + amps(cell.i_source) + " is not above the lower bound " + amps(bounds.lower));
  }
  if (!(cell.i_source < bounds.upper)) {
    throw CircuitError(CircuitError::Kind::MultiTrigger,
                       "source " + amps(cell.i_source) + " is not below the upper bound " + amps(bounds.upper));
  }

  const std::size_t m = cell.size();
  Selection sel;
  sel.sampled_triggers.resize(m);
  for (std::size_t b = 0; b < m; ++b) sel.sampled_triggers[b] = sample_trigger(cell.branches[b], rng);

  // All insulating: the source splits by conductance, and the branch whose
  // sampled threshold is lowest relative to its current fires first.
  const auto initial = steady_state_currents(cell, m);
  std::size_t first = 0;
  for (std::size_t b = 1; b < m; ++b) {
    if (sel.sampled_triggers[b] / initial[b] < sel.sampled_triggers[first] / initial[first]) first = b;
  }
  if (!(initial[first] > sel.sampled_triggers[first])) {
    throw CircuitError(CircuitError::Kind::NoSelection, "no branch reaches its sampled trigger current");
  }
  sel.branch = first;
  sel.branch_currents = steady_state_currents(cell, first);

  if (sel.branch_currents[first] < cell.branches[first].i_hold_nominal) {
    throw CircuitError(CircuitError::Kind::ModelInconsistency,
                       "metallic branch current " + amps(sel.branch_currents[first]) + " is below the hold current");
  }
  for (std::size_t b = 0; b < m; ++b) {
    if (b != first && !(sel.branch_currents[b] < sel.sampled_triggers[b])) {
      throw CircuitError(CircuitError::Kind::ModelInconsistency,
                         "insulating branch " + std::to_string(b) + " carries " + amps(sel.branch_currents[b]) +
                             ", at or above its sampled trigger " + amps(sel.sampled_triggers[b]));
    }
  }
  return sel;
}

CycleStats simulate_cycles(const MultiStateCell& cell, std::size_t cycles, RngStream& rng) {
  CycleStats stats;
  stats.counts.assign(cell.size(), 0);
  stats.selected.reserve(cycles);
  stats.triggers.reserve(cycles);
  for (std::size_t c = 0; c < cycles; ++c) {
    Selection sel = resolve_selection(cell, rng);
    ++stats.counts[sel.branch];
    stats.selected.push_back(sel.branch);
    stats.triggers.push_back(std::move(sel.sampled_triggers));
  }
  return stats;
}

namespace {
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
}  // namespace

double two_state_switch_probability(double drive, const Vo2Device& dev) {
  if (dev.sigma_trig == 0.0) return drive > dev.i_trig_nominal ? 1.0 : 0.0;
  if (drive <= 0.0) return 0.0;
  const double mass_below_zero = normal_cdf(-dev.i_trig_nominal / dev.sigma_trig);
  const double below_drive = normal_cdf((drive - dev.i_trig_nominal) / dev.sigma_trig);
  return (below_drive - mass_below_zero) / (1.0 - mass_below_zero);
}

Vo2State sample_two_state(double drive, Vo2Device& dev, RngStream& rng) {
  if (dev.state == Vo2State::Metallic) {
    if (drive < dev.i_hold_nominal) dev.state = Vo2State::Insulating;
  } else if (sample_trigger(dev, rng) < drive) {
    dev.state = Vo2State::Metallic;
  }
  return dev.state;
}

}  // namespace kpbit
