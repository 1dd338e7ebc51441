#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kpbit/rng.hpp"

namespace kpbit {

enum class Vo2State { Insulating, Metallic };

/// Behavioral VO2 threshold switch. All quantities in SI units.
/// Trigger/hold voltages follow from the currents: V_T = I_T r_ins,
/// V_H = I_H r_met.
struct Vo2Device {
  double r_ins = 20e3;
  double r_met = 1e3;
  double i_trig_nominal = 30e-6;
  double i_hold_nominal = 50e-6;
  double sigma_trig = 1.5e-6;
  Vo2State state = Vo2State::Insulating;

  double v_trig() const { return i_trig_nominal * r_ins; }
  double v_hold() const { return i_hold_nominal * r_met; }

  void validate() const;
};

/// M parallel VO2 branches, each in series with r_series, fed by a current source.
struct MultiStateCell {
  std::vector<Vo2Device> branches;
  double r_series = 2e3;
  double i_source = 200e-6;

  std::size_t size() const { return branches.size(); }

  /// M copies of `device`.
  static MultiStateCell uniform(std::size_t m, const Vo2Device& device, double r_series, double i_source);

  void validate() const;
};

struct CurrentBounds {
  double lower = 0.0;
  double upper = 0.0;

  bool feasible() const { return lower < upper; }
  bool contains(double i) const { return lower < i && i < upper; }
};

class CircuitError : public std::runtime_error {
 public:
  enum class Kind { NoSelection, MultiTrigger, ModelInconsistency };

  CircuitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Normal(i_trig_nominal, sigma_trig), redrawn until positive.
double sample_trigger(const Vo2Device& dev, RngStream& rng);

/// Source-current window that sustains exactly one metallic branch:
///   M I_T < I < [(M-1)(R_M+R) + (R_I+R)] / (R_M+R) * I_T
/// computed from branch 0's nominal values.
CurrentBounds current_bounds(const MultiStateCell& cell);

/// Branch currents by current division with branch `metallic` (if any)
/// at R_M + R and the rest at R_I + R. Pass metallic = size() for all insulating.
std::vector<double> steady_state_currents(const MultiStateCell& cell, std::size_t metallic);

struct Selection {
  std::size_t branch = 0;
  std::vector<double> branch_currents;
  std::vector<double> sampled_triggers;
};

/// Event-wise resolution of one cycle: equal split while insulating, the
/// branch with the lowest sampled trigger fires (ties to the lowest index),
/// then the divider settles. Throws CircuitError when the source lies
/// outside current_bounds or the settled state violates hold/trigger limits.
Selection resolve_selection(const MultiStateCell& cell, RngStream& rng);

struct CycleStats {
  std::vector<std::uint64_t> counts;
  std::vector<std::size_t> selected;
  /// triggers[cycle][branch]
  std::vector<std::vector<double>> triggers;
};

CycleStats simulate_cycles(const MultiStateCell& cell, std::size_t cycles, RngStream& rng);

/// P(sampled I_T < drive) under the positive-truncated trigger Gaussian.
/// Step at the nominal trigger when sigma_trig is zero.
double two_state_switch_probability(double drive, const Vo2Device& dev);

/// One drive event on a two-state VO2 p-bit. An insulating device switches
/// when a fresh trigger sample lies below `drive`; a metallic device relaxes
/// once drive drops below the hold current. Updates and returns dev.state.
Vo2State sample_two_state(double drive, Vo2Device& dev, RngStream& rng);

}  // namespace kpbit
