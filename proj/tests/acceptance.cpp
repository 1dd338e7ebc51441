// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "kpbit/engine.hpp"
#include "kpbit/graph.hpp"
#include "kpbit/oracle.hpp"
#include "kpbit/reduction.hpp"
#include "kpbit/vo2.hpp"

namespace fs = std::filesystem;
using namespace kpbit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 6) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << x;
  return ss.str();
}

// 1. Single-update law of the 3-state p-bit against the closed form.
Outcome probcurve_law() {
  const auto t0 = Clock::now();
  std::vector<double> grid;
  for (int i = 0; i <= 16; ++i) grid.push_back(-4.0 + 0.5 * i);
  double worst = 0.0;
  std::uint64_t seed = 2024;
  for (double beta : {1.0, 5.0}) {
    RngStream rng(seed++);
    for (const auto& row : probcurve(3, beta, grid, 1000000, rng)) {
      const double retain = (1.0 + std::tanh(beta * row.phi)) / 2.0;
      const double alt = (1.0 - std::tanh(beta * row.phi)) / 4.0;
      worst = std::max(worst, std::abs(row.p_retain_mc - retain));
      for (double p : row.p_alt_mc) worst = std::max(worst, std::abs(p - alt));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 0.002 && secs < 60.0,
          "max |mc - analytic| = " + fmt(worst) + " (tol 0.002), " + fmt(secs, 3) + " s (limit 60)"};
}

// 2. energy = |E| - 2 cut, exactly.
Outcome energy_identity() {
  RngStream rng(77);
  std::size_t violations = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    const std::size_t n = 1 + rng.uniform_int(20);
    const std::size_t k = 2 + rng.uniform_int(3);
    const Graph g = generate_random_graph(n, rng.uniform01(), rng.next_u64());
    std::vector<State> s(n);
    for (auto& x : s) x = static_cast<State>(rng.uniform_int(k));
    const Assignment a(k, s);
    const auto lhs = energy(g, a);
    const auto rhs = static_cast<std::int64_t>(g.num_edges()) - 2 * static_cast<std::int64_t>(cut_value(g, a));
    violations += lhs != rhs;
  }
  return {violations == 0, std::to_string(violations) + " violations over 1000 pairs"};
}

// 3./4. Direct engine against the exhaustive optimum on n = 8 graphs.
Outcome oracle_equivalence(std::size_t k, std::size_t graphs, std::size_t required, BetaSchedule schedule,
                           std::uint64_t seed_base, double time_limit) {
  const auto t0 = Clock::now();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < graphs; ++i) {
    const Graph g = generate_random_graph(8, 0.5, seed_base + i);
    EngineConfig cfg;
    cfg.k = k;
    cfg.sweeps = 500;
    cfg.trials = 20;
    cfg.schedule = schedule;
    cfg.master_seed = 1000 + i;
    const auto batch = run_trials(g, cfg);
    const auto optimum = brute_force_max_k_cut(g, k).cut;
    hits += batch.max_best == optimum;
  }
  const double secs = seconds_since(t0);
  return {hits >= required && secs < time_limit, std::to_string(hits) + "/" + std::to_string(graphs) +
                                                     " optimal (need " + std::to_string(required) + "), " +
                                                     fmt(secs, 3) + " s"};
}

// 5. Direct 3-state engine vs. the 90-spin reduced baseline at equal update budgets.
Outcome reduction_comparison() {
  const Graph g = generate_random_graph(30, 0.3, 1);
  const std::size_t k = 3;

  EngineConfig direct;
  direct.k = k;
  direct.sweeps = 300;  // 300 * 30 = 9000 node updates per trial
  direct.trials = 100;
  direct.schedule = BetaSchedule::constant(1.0);
  direct.master_seed = 5;
  const auto kstate = run_trials(g, direct);

  const Penalties p = default_penalties(g);
  const OneHotEncoding enc = encode_one_hot(g, k, p.a, p.b);
  EngineConfig reduced = direct;
  reduced.sweeps = direct.sweeps * g.num_nodes() / enc.model.n_spins();  // 100 * 90 = 9000 spin updates
  const auto baseline = run_baseline_trials(g, enc, reduced, RepairRule::Random);

  const bool spins_ok = enc.model.n_spins() == 90;
  const bool quality_ok = kstate.mean_best >= baseline.mean_best - 2.0;
  return {spins_ok && quality_ok,
          "|E|=" + std::to_string(g.num_edges()) + ", 3-state mean " + fmt(kstate.mean_best) + " (max " +
              std::to_string(kstate.max_best) + ") vs 2-state mean " + fmt(baseline.mean_best) + " (max " +
              std::to_string(baseline.max_best) + "), n_spins=" + std::to_string(enc.model.n_spins()) +
              ", updates/trial " + std::to_string(direct.sweeps * g.num_nodes()) + " vs " +
              std::to_string(reduced.sweeps * enc.model.n_spins())};
}

MultiStateCell table_cell(double current) {
  return MultiStateCell::uniform(4, Vo2Device{}, 2e3, current);
}

// 6. Current window and the resolved steady state at 200 uA.
Outcome current_window() {
  const MultiStateCell cell = table_cell(200e-6);
  const CurrentBounds b = current_bounds(cell);
  const bool bounds_ok = std::abs(b.lower - 120e-6) <= 1e-6 * 120e-6 && std::abs(b.upper - 310e-6) <= 1e-6 * 310e-6;

  RngStream rng(6);
  const Selection s = resolve_selection(cell, rng);
  const Vo2Device& d = cell.branches.front();
  bool currents_ok = std::abs(s.branch_currents[s.branch] - 141.9e-6) <= 0.1e-6 &&
                     s.branch_currents[s.branch] >= d.i_hold_nominal;
  double ins = 0.0;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i == s.branch) continue;
    ins = s.branch_currents[i];
    currents_ok = currents_ok && std::abs(ins - 19.4e-6) <= 0.1e-6 && ins < d.i_trig_nominal;
  }
  return {bounds_ok && currents_ok, "bounds (" + fmt(b.lower * 1e6, 9) + ", " + fmt(b.upper * 1e6, 9) +
                                        ") uA, I_met " + fmt(s.branch_currents[s.branch] * 1e6, 5) +
                                        " uA, I_ins " + fmt(ins * 1e6, 5) + " uA"};
}

// 7. Branch selection uniformity over 2000 cycles.
Outcome selection_uniformity() {
  const auto t0 = Clock::now();
  const MultiStateCell cell = table_cell(200e-6);
  RngStream rng(7);
  bool one_metallic = true;
  std::vector<std::uint64_t> counts(4, 0);
  for (int c = 0; c < 2000; ++c) {
    try {
      const Selection s = resolve_selection(cell, rng);
      ++counts[s.branch];
      std::size_t metallic = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        if (i == s.branch) {
          metallic += s.branch_currents[i] >= cell.branches[i].i_hold_nominal;
        } else if (!(s.branch_currents[i] < s.sampled_triggers[i])) {
          ++metallic;
        }
      }
      one_metallic = one_metallic && metallic == 1;
    } catch (const CircuitError&) {
      one_metallic = false;
    }
  }
  const ChiSquareResult chi = chi_square_uniform(counts);
  const double secs = seconds_since(t0);
  return {one_metallic && chi.pass && chi.statistic < 16.27 && secs < 5.0,
          "counts (" + std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," +
              std::to_string(counts[2]) + "," + std::to_string(counts[3]) + "), chi2 " + fmt(chi.statistic, 4) +
              " < " + fmt(chi.critical, 5) + ", one metallic every cycle: " + (one_metallic ? "yes" : "no") + ", " +
              fmt(secs, 3) + " s"};
}

// 8. Every CLI command twice (and with trial threads) yields identical bytes.
Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("kpbit_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  auto invoke = [](std::vector<std::string> args) {
    args.insert(args.begin(), "kpbit");
    std::ostringstream out, err;
    return cli::run(args, out, err);
  };

  struct Case {
    std::string name;
    std::vector<std::string> args;
    std::vector<std::string> outputs;
  };
  const std::string graph = p("g.dimacs");
  if (invoke({"gen", "--nodes", "12", "--edge-prob", "0.4", "--seed", "3", "--out", graph}) != 0) {
    return {false, "could not generate input graph"};
  }

  std::vector<Case> cases{
      {"gen", {"gen", "--nodes", "30", "--edge-prob", "0.3", "--seed", "1", "--out", p("gen.dimacs")},
       {p("gen.dimacs")}},
      {"solve",
       {"solve", "--graph", graph, "--k", "3", "--sweeps", "200", "--trials", "16", "--seed", "9", "--beta-ramp",
        "0.1:0.8", "--out", p("solve")},
       {p("solve.summary.json"), p("solve.trace.csv")}},
      {"baseline",
       {"baseline", "--graph", graph, "--k", "3", "--sweeps", "60", "--trials", "16", "--seed", "9", "--beta", "1",
        "--out", p("base"), "--export-model", p("model.json")},
       {p("base.summary.json"), p("base.trace.csv"), p("model.json")}},
      {"oracle", {"oracle", "--graph", graph, "--k", "3", "--out", p("oracle.json")}, {p("oracle.json")}},
      {"probcurve",
       {"probcurve", "--k", "3", "--beta", "1", "--samples", "20000", "--seed", "4", "--out", p("pc.csv")},
       {p("pc.csv")}},
      {"circuit",
       {"circuit", "--branches", "4", "--current", "200e-6", "--cycles", "2000", "--sigma-it", "1.5e-6", "--seed",
        "2", "--out", p("circ")},
       {p("circ.bounds.json"), p("circ.cycles.csv"), p("circ.counts.json")}},
  };

  std::string failed;
  for (const auto& c : cases) {
    std::vector<std::vector<std::string>> variants{c.args, c.args};
    if (c.name == "solve" || c.name == "baseline") {
      auto threaded = c.args;
      threaded.insert(threaded.end(), {"--threads", "4"});
      variants.push_back(threaded);
    }
    std::vector<std::string> reference;
    bool ok = true;
    for (std::size_t v = 0; v < variants.size(); ++v) {
      if (invoke(variants[v]) != 0) {
        ok = false;
        break;
      }
      std::vector<std::string> contents;
      for (const auto& f : c.outputs) contents.push_back(slurp(f));
      if (v == 0) {
        reference = contents;
        for (const auto& s : contents) ok = ok && !s.empty();
      } else {
        ok = ok && contents == reference;
      }
    }
    if (!ok) failed += " " + c.name;
  }
  fs::remove_all(dir);
  return {failed.empty(), failed.empty() ? "gen, solve, baseline, oracle, probcurve, circuit identical (solve and "
                                           "baseline also with --threads 4)"
                                         : "differing:" + failed};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"C1 3-state transition law vs closed form (beta 1, 5)", probcurve_law},
      {"C2 energy-cut identity", energy_identity},
      {"C3 oracle equivalence K=3", [] { return oracle_equivalence(3, 20, 19, BetaSchedule::constant(1.0), 300, 60.0); }},
      {"C4 oracle equivalence K=4, beta 0.1->0.8",
       [] { return oracle_equivalence(4, 10, 9, BetaSchedule::linear(0.1, 0.8), 400, 1e9); }},
      {"C5 3-state engine vs 90-spin reduced baseline", reduction_comparison},
      {"C6 current bounds and steady state", current_window},
      {"C7 multi-state selection uniformity", selection_uniformity},
      {"C8 CLI byte-identical reruns", cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << " -- " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
