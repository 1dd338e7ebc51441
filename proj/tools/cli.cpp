#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpbit/engine.hpp"
#include "kpbit/graph.hpp"
#include "kpbit/oracle.hpp"
#include "kpbit/reduction.hpp"
#include "kpbit/vo2.hpp"

namespace kpbit::cli {
namespace {

using nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << std::setprecision(17) << x;
  return ss.str();
}

std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << contents;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void write_json(const std::string& path, const ordered_json& j) { write_file(path, j.dump(2) + "\n"); }

Graph load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open graph file '" + path + "'");
  try {
    return parse_graph(f);
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- shared annealing options ------------------------------------------------

struct AnnealOptions {
  std::string graph;
  std::size_t k = 3;
  std::size_t sweeps = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double beta = 1.0;
  std::string beta_ramp;
  std::string order = "random";
  std::size_t threads = 1;
  std::string out;
  bool record_time = false;
};

void add_anneal_options(CLI::App* cmd, AnnealOptions& o, bool allow_ramp) {
  cmd->add_option("--graph", o.graph, "Input graph file")->required();
  cmd->add_option("--k", o.k, "Number of states / partitions")->capture_default_str();
  cmd->add_option("--sweeps", o.sweeps, "Sweeps per trial")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--trials", o.trials, "Independent trials")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  auto* beta = cmd->add_option("--beta", o.beta, "Constant inverse temperature")
                   ->capture_default_str()
                   ->check(CLI::NonNegativeNumber);
  if (allow_ramp) {
    cmd->add_option("--beta-ramp", o.beta_ramp, "Linear ramp B0:B1 over the sweep budget")->excludes(beta);
  }
  cmd->add_option("--order", o.order, "Node update order")
      ->capture_default_str()
      ->check(CLI::IsMember({"random", "fixed"}));
  cmd->add_option("--threads", o.threads, "Worker threads (results do not depend on this)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output prefix")->required();
  cmd->add_flag("--record-time", o.record_time, "Include wall time in the summary file");
}

BetaSchedule parse_schedule(const AnnealOptions& o) {
  if (o.beta_ramp.empty()) return BetaSchedule::constant(o.beta);
  const auto colon = o.beta_ramp.find(':');
  if (colon == std::string::npos) throw UsageError("--beta-ramp expects B0:B1");
  try {
    std::size_t p0 = 0, p1 = 0;
    const std::string a = o.beta_ramp.substr(0, colon);
    const std::string b = o.beta_ramp.substr(colon + 1);
    const double from = std::stod(a, &p0);
    const double to = std::stod(b, &p1);
    if (p0 != a.size() || p1 != b.size()) throw std::invalid_argument("trailing characters");
    return BetaSchedule::linear(from, to);
  } catch (const std::exception&) {
    throw UsageError("--beta-ramp expects B0:B1, got '" + o.beta_ramp + "'");
  }
}

EngineConfig make_config(const AnnealOptions& o) {
  EngineConfig cfg;
  cfg.k = o.k;
  cfg.sweeps = o.sweeps;
  cfg.trials = o.trials;
  cfg.schedule = parse_schedule(o);
  cfg.order = o.order == "fixed" ? UpdateOrder::Fixed : UpdateOrder::RandomPermutation;
  cfg.master_seed = o.seed;
  cfg.threads = o.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

ordered_json config_json(const AnnealOptions& o, const EngineConfig& cfg, const Graph& g) {
  ordered_json c;
  c["graph"] = o.graph;
  c["nodes"] = g.num_nodes();
  c["edges"] = g.num_edges();
  c["k"] = cfg.k;
  c["sweeps"] = cfg.sweeps;
  c["trials"] = cfg.trials;
  c["seed"] = cfg.master_seed;
  c["schedule"] = {{"kind", cfg.schedule.kind == BetaSchedule::Kind::Linear ? "linear" : "constant"},
                   {"beta_start", cfg.schedule.beta_start},
                   {"beta_end", cfg.schedule.beta_end}};
  c["order"] = o.order;
  return c;
}

template <typename Trials>
ordered_json results_json(const Trials& trials, const std::map<std::size_t, std::size_t>& histogram, double mean,
                          std::size_t max) {
  ordered_json r;
  std::vector<std::size_t> best;
  for (const auto& t : trials) best.push_back(t.best_cut);
  r["best_cuts"] = best;
  ordered_json hist = ordered_json::array();
  for (const auto& [cut, count] : histogram) hist.push_back({cut, count});
  r["histogram"] = hist;
  r["mean_best"] = mean;
  r["max_best"] = max;
  return r;
}

template <typename Trials>
std::string trace_csv(const Trials& trials, const BetaSchedule& schedule, std::size_t sweeps) {
  std::ostringstream ss;
  ss << "trial,sweep,beta,cut\n";
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto& trace = trials[t].cut_trace;
    for (std::size_t s = 0; s < trace.size(); ++s) {
      ss << t << ',' << s + 1 << ',' << fmt17(schedule.at(s, sweeps)) << ',' << trace[s] << '\n';
    }
  }
  return ss.str();
}

// --- subcommands ---------------------------------------------------------------

struct GenOptions {
  std::size_t nodes = 0;
  double edge_prob = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  const Graph g = generate_random_graph(o.nodes, o.edge_prob, o.seed);
  std::ostringstream ss;
  write_graph(ss, g, {"random graph nodes=" + std::to_string(o.nodes) + " edge-prob=" + shortest(o.edge_prob) +
                          " seed=" + std::to_string(o.seed)});
  write_file(o.out, ss.str());
  out << "n=" << g.num_nodes() << " m=" << g.num_edges() << "\n";
  return kOk;
}

int cmd_solve(const AnnealOptions& o, std::ostream& out) {
  const EngineConfig cfg = make_config(o);
  const Graph g = load_graph(o.graph);
  const auto start = std::chrono::steady_clock::now();
  const TrialBatch batch = run_trials(g, cfg);
  const double wall = elapsed_seconds(start);

  ordered_json summary;
  summary["command"] = "solve";
  summary["config"] = config_json(o, cfg, g);
  summary.update(results_json(batch.trials, batch.histogram, batch.mean_best, batch.max_best));
  if (o.record_time) summary["wall_time_s"] = wall;
  write_json(o.out + ".summary.json", summary);
  write_file(o.out + ".trace.csv", trace_csv(batch.trials, cfg.schedule, cfg.sweeps));
  out << "max=" << batch.max_best << " mean=" << batch.mean_best << " wall_time_s=" << wall << "\n";
  return kOk;
}

struct BaselineOptions {
  AnnealOptions anneal;
  std::optional<double> penalty_a;
  std::optional<double> penalty_b;
  std::string repair = "random";
  std::string export_model;
};

ordered_json model_json(const OneHotEncoding& enc) {
  ordered_json j;
  j["n_spins"] = enc.model.n_spins();
  ordered_json couplings = ordered_json::array();
  for (const Coupling& c : enc.model.couplings()) {
    if (c.weight != 0.0) couplings.push_back({c.i, c.j, c.weight});
  }
  j["couplings"] = couplings;
  j["biases"] = enc.model.biases();
  j["offset"] = enc.model.offset();
  j["map"] = {{"nodes", enc.map.nodes},
              {"k", enc.map.k},
              {"penalty_a", enc.map.penalty_a},
              {"penalty_b", enc.map.penalty_b},
              {"spin_index", "node * k + state"}};
  return j;
}

int cmd_baseline(const BaselineOptions& o, std::ostream& out) {
  const EngineConfig cfg = make_config(o.anneal);
  const Graph g = load_graph(o.anneal.graph);
  const Penalties defaults = default_penalties(g);
  const double a = o.penalty_a.value_or(defaults.a);
  const double b = o.penalty_b.value_or(defaults.b);
  if (!(a > 0.0) || !(b > 0.0)) throw UsageError("penalty weights must be positive");
  const RepairRule repair = o.repair == "first-hot" ? RepairRule::FirstHot : RepairRule::Random;

  const OneHotEncoding enc = encode_one_hot(g, cfg.k, a, b);
  if (!o.export_model.empty()) write_json(o.export_model, model_json(enc));

  const auto start = std::chrono::steady_clock::now();
  const BaselineBatch batch = run_baseline_trials(g, enc, cfg, repair);
  const double wall = elapsed_seconds(start);

  ordered_json summary;
  summary["command"] = "baseline";
  summary["config"] = config_json(o.anneal, cfg, g);
  summary["config"]["repair"] = o.repair;
  summary["reduction"] = {{"n_spins", enc.model.n_spins()}, {"penalty_a", a}, {"penalty_b", b}};
  summary.update(results_json(batch.trials, batch.histogram, batch.mean_best, batch.max_best));
  if (o.anneal.record_time) summary["wall_time_s"] = wall;
  write_json(o.anneal.out + ".summary.json", summary);
  write_file(o.anneal.out + ".trace.csv", trace_csv(batch.trials, cfg.schedule, cfg.sweeps));
  out << "n_spins=" << enc.model.n_spins() << " max=" << batch.max_best << " mean=" << batch.mean_best
      << " wall_time_s=" << wall << "\n";
  return kOk;
}

struct OracleOptions {
  std::string graph;
  std::size_t k = 3;
  std::string out;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
  if (o.k < 1) throw UsageError("k must be >= 1");
  const Graph g = load_graph(o.graph);
  const OracleResult r = brute_force_max_k_cut(g, o.k);
  ordered_json j;
  j["graph"] = o.graph;
  j["nodes"] = g.num_nodes();
  j["edges"] = g.num_edges();
  j["k"] = o.k;
  j["optimum"] = r.cut;
  j["assignment"] = std::vector<State>(r.assignment.states().begin(), r.assignment.states().end());
  const std::string text = j.dump(2) + "\n";
  if (!o.out.empty()) write_file(o.out, text);
  out << text;
  return kOk;
}

struct ProbCurveOptions {
  std::size_t k = 3;
  double beta = 1.0;
  double phi_min = -4.0;
  double phi_max = 4.0;
  double step = 0.5;
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_probcurve(const ProbCurveOptions& o, std::ostream& out) {
  if (!(o.step > 0.0)) throw UsageError("--step must be positive");
  if (o.phi_max < o.phi_min) throw UsageError("--phi-max must not be below --phi-min");
  if (o.k < 2) throw UsageError("k must be >= 2");
  std::vector<double> grid;
  const auto points = static_cast<std::size_t>(std::floor((o.phi_max - o.phi_min) / o.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < points; ++i) grid.push_back(o.phi_min + static_cast<double>(i) * o.step);

  RngStream rng(o.seed);
  const auto rows = probcurve(o.k, o.beta, grid, o.samples, rng);

  std::ostringstream ss;
  ss << "phi,p_retain_mc,p_retain_analytic";
  for (std::size_t j = 1; j < o.k; ++j) ss << ",p_alt_" << j << "_mc";
  ss << ",p_alt_analytic\n";
  for (const auto& r : rows) {
    ss << fmt17(r.phi) << ',' << fmt17(r.p_retain_mc) << ',' << fmt17(r.p_retain_analytic);
    for (double p : r.p_alt_mc) ss << ',' << fmt17(p);
    ss << ',' << fmt17(r.p_alt_analytic) << '\n';
  }
  write_file(o.out, ss.str());
  out << "points=" << rows.size() << "\n";
  return kOk;
}

struct CircuitOptions {
  std::size_t branches = 4;
  double current = 200e-6;
  std::size_t cycles = 2000;
  std::optional<double> sigma_it;
  std::uint64_t seed = 0;
  std::optional<double> r_series;
  std::optional<double> r_ins;
  std::optional<double> r_met;
  std::optional<double> i_trig;
  std::optional<double> i_hold;
  std::string params;
  std::string out;
};

MultiStateCell build_cell(const CircuitOptions& o) {
  Vo2Device dev;
  double r_series = 2e3;
  if (!o.params.empty()) {
    std::ifstream f(o.params);
    if (!f) throw IoError("cannot open parameter file '" + o.params + "'");
    nlohmann::json p;
    try {
      f >> p;
      dev.r_ins = p.value("r_ins", dev.r_ins);
      dev.r_met = p.value("r_met", dev.r_met);
      dev.i_trig_nominal = p.value("i_trig", dev.i_trig_nominal);
      dev.i_hold_nominal = p.value("i_hold", dev.i_hold_nominal);
      dev.sigma_trig = p.value("sigma_it", 0.05 * dev.i_trig_nominal);
      r_series = p.value("r_series", r_series);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(o.params + ": " + e.what());
    }
  }
  if (o.r_ins) dev.r_ins = *o.r_ins;
  if (o.r_met) dev.r_met = *o.r_met;
  if (o.i_trig) dev.i_trig_nominal = *o.i_trig;
  if (o.i_hold) dev.i_hold_nominal = *o.i_hold;
  if (o.sigma_it) {
    dev.sigma_trig = *o.sigma_it;
  } else if (o.params.empty() && o.i_trig) {
    dev.sigma_trig = 0.05 * dev.i_trig_nominal;
  }
  if (o.r_series) r_series = *o.r_series;
  try {
    return MultiStateCell::uniform(o.branches, dev, r_series, o.current);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_circuit(const CircuitOptions& o, std::ostream& out, std::ostream& err) {
  const MultiStateCell cell = build_cell(o);
  const Vo2Device& dev = cell.branches.front();
  const CurrentBounds bounds = current_bounds(cell);
  const bool within = bounds.contains(cell.i_source);

  ordered_json bj;
  bj["branches"] = cell.size();
  bj["current"] = cell.i_source;
  bj["r_series"] = cell.r_series;
  bj["r_ins"] = dev.r_ins;
  bj["r_met"] = dev.r_met;
  bj["i_trig"] = dev.i_trig_nominal;
  bj["i_hold"] = dev.i_hold_nominal;
  bj["sigma_it"] = dev.sigma_trig;
  bj["seed"] = o.seed;
  bj["lower"] = bounds.lower;
  bj["upper"] = bounds.upper;
  bj["feasible"] = bounds.feasible();
  bj["current_within_bounds"] = within;
  write_json(o.out + ".bounds.json", bj);

  const std::string bounds_text = "bounds (" + fmt17(bounds.lower) + ", " + fmt17(bounds.upper) + ") A";
  if (!within) {
    err << "source current " << fmt17(cell.i_source) << " A lies outside " << bounds_text << "\n";
    return kInfeasibleCircuit;
  }

  RngStream rng(o.seed);
  CycleStats stats;
  try {
    stats = simulate_cycles(cell, o.cycles, rng);
  } catch (const CircuitError& e) {
    err << "circuit: " << e.what() << "; " << bounds_text << "\n";
    return kInfeasibleCircuit;
  }

  std::ostringstream csv;
  csv << "cycle,selected_branch";
  for (std::size_t b = 0; b < cell.size(); ++b) csv << ",i_t_" << b;
  csv << '\n';
  for (std::size_t c = 0; c < stats.selected.size(); ++c) {
    csv << c << ',' << stats.selected[c];
    for (double it : stats.triggers[c]) csv << ',' << fmt17(it);
    csv << '\n';
  }
  write_file(o.out + ".cycles.csv", csv.str());

  ordered_json cj;
  cj["cycles"] = o.cycles;
  cj["counts"] = stats.counts;
  if (cell.size() >= 2 && o.cycles > 0) {
    const ChiSquareResult chi = chi_square_uniform(stats.counts);
    cj["chi_square"] = {{"statistic", chi.statistic},
                        {"dof", chi.dof},
                        {"critical_p0001", chi.critical},
                        {"pass", chi.pass}};
  } else {
    cj["chi_square"] = nullptr;
  }
  write_json(o.out + ".counts.json", cj);
  out << bounds_text << "; counts=" << nlohmann::json(stats.counts).dump() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"K-state p-bit Max-K-Cut engine, 2-state baseline, oracle and VO2 circuit model", "kpbit"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded G(n, p) random graph");
  gen_cmd->add_option("--nodes", gen.nodes, "Node count")->required();
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output graph file")->required();

  AnnealOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve Max-K-Cut directly with K-state p-bits");
  add_anneal_options(solve_cmd, solve, true);

  BaselineOptions baseline;
  auto* baseline_cmd = app.add_subcommand("baseline", "One-hot reduction solved with 2-state p-bits");
  add_anneal_options(baseline_cmd, baseline.anneal, true);
  baseline_cmd->add_option("--penalty-a", baseline.penalty_a, "One-hot penalty (default max degree + 1)");
  baseline_cmd->add_option("--penalty-b", baseline.penalty_b, "Edge penalty (default 1)");
  baseline_cmd->add_option("--repair", baseline.repair, "Repair rule for non one-hot rows")
      ->capture_default_str()
      ->check(CLI::IsMember({"random", "first-hot"}));
  baseline_cmd->add_option("--export-model", baseline.export_model, "Write the reduced Ising model as JSON");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact Max-K-Cut by exhaustive search");
  oracle_cmd->add_option("--graph", oracle.graph, "Input graph file")->required();
  oracle_cmd->add_option("--k", oracle.k, "Number of partitions")->capture_default_str();
  oracle_cmd->add_option("--out", oracle.out, "Also write the JSON result here");

  ProbCurveOptions pc;
  auto* pc_cmd = app.add_subcommand("probcurve", "Single-node transition probabilities versus phi");
  pc_cmd->add_option("--k", pc.k, "Number of states")->capture_default_str();
  pc_cmd->add_option("--beta", pc.beta, "Inverse temperature")->capture_default_str()->check(CLI::NonNegativeNumber);
  pc_cmd->add_option("--phi-min", pc.phi_min)->capture_default_str();
  pc_cmd->add_option("--phi-max", pc.phi_max)->capture_default_str();
  pc_cmd->add_option("--step", pc.step)->capture_default_str();
  pc_cmd->add_option("--samples", pc.samples)->capture_default_str()->check(CLI::PositiveNumber);
  pc_cmd->add_option("--seed", pc.seed)->capture_default_str();
  pc_cmd->add_option("--out", pc.out, "Output CSV")->required();

  CircuitOptions circ;
  auto* circ_cmd = app.add_subcommand("circuit", "Multi-state VO2 p-bit: current bounds and cycle statistics");
  circ_cmd->add_option("--branches", circ.branches, "Parallel VO2 branches (M)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  circ_cmd->add_option("--current", circ.current, "Source current [A]")->capture_default_str();
  circ_cmd->add_option("--cycles", circ.cycles, "Selection cycles")->capture_default_str();
  circ_cmd->add_option("--sigma-it", circ.sigma_it, "Trigger current std dev [A] (default 5% of I_T)");
  circ_cmd->add_option("--seed", circ.seed)->capture_default_str();
  circ_cmd->add_option("--r-series", circ.r_series, "Series resistance per branch [ohm] (default 2e3)");
  circ_cmd->add_option("--r-ins", circ.r_ins, "Insulating resistance [ohm] (default 20e3)");
  circ_cmd->add_option("--r-met", circ.r_met, "Metallic resistance [ohm] (default 1e3)");
  circ_cmd->add_option("--i-trig", circ.i_trig, "Nominal trigger current [A] (default 30e-6)");
  circ_cmd->add_option("--i-hold", circ.i_hold, "Nominal hold current [A] (default 50e-6)");
  circ_cmd->add_option("--params", circ.params, "JSON device parameter file; flags override it");
  circ_cmd->add_option("--out", circ.out, "Output prefix")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*baseline_cmd) return cmd_baseline(baseline, out);
    if (*oracle_cmd) return cmd_oracle(oracle, out);
    if (*pc_cmd) return cmd_probcurve(pc, out);
    if (*circ_cmd) return cmd_circuit(circ, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kOracleTooLarge;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace kpbit::cli
