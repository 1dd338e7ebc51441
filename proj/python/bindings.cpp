#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "kpbit/engine.hpp"
#include "kpbit/graph.hpp"
#include "kpbit/oracle.hpp"
#include "kpbit/pbit.hpp"
#include "kpbit/reduction.hpp"
#include "kpbit/vo2.hpp"

namespace py = pybind11;
using namespace kpbit;

namespace {

Assignment to_assignment(std::size_t k, const std::vector<State>& states) { return Assignment(k, states); }

std::vector<State> states_of(const Assignment& a) { return {a.states().begin(), a.states().end()}; }

EngineConfig make_config(std::size_t k, std::size_t sweeps, std::size_t trials, std::uint64_t seed, double beta,
                         std::optional<std::pair<double, double>> beta_ramp, const std::string& order,
                         std::size_t threads) {
  EngineConfig cfg;
  cfg.k = k;
  cfg.sweeps = sweeps;
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.schedule = beta_ramp ? BetaSchedule::linear(beta_ramp->first, beta_ramp->second) : BetaSchedule::constant(beta);
  if (order != "random" && order != "fixed") throw std::invalid_argument("order must be 'random' or 'fixed'");
  cfg.order = order == "fixed" ? UpdateOrder::Fixed : UpdateOrder::RandomPermutation;
  cfg.threads = threads;
  cfg.validate();
  return cfg;
}

py::dict batch_dict(const std::vector<std::size_t>& best, const std::map<std::size_t, std::size_t>& hist,
                    double mean, std::size_t max) {
  py::dict d;
  d["best_cuts"] = best;
  d["histogram"] = hist;
  d["mean_best"] = mean;
  d["max_best"] = max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_kpbit, m) {
  m.doc() = "K-state p-bit engine for Max-K-Cut, 2-state one-hot baseline, exact oracle and VO2 circuit model";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", PyExc_ValueError);
  py::register_exception<CircuitError>(m, "CircuitError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
             std::vector<Edge> e;
             for (auto [u, v] : edges) e.push_back({u, v});
             return Graph(n, std::move(e));
           }),
           py::arg("n"), py::arg("edges"), "Graph from 0-based edge pairs")
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::pair<NodeId, NodeId>> out;
                               for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
                               return out;
                             })
      .def("neighbors", [](const Graph& g, NodeId v) {
        auto n = g.neighbors(v);
        return std::vector<NodeId>(n.begin(), n.end());
      })
      .def("max_degree", &Graph::max_degree)
      .def("to_text", [](const Graph& g) {
        std::ostringstream ss;
        write_graph(ss, g);
        return ss.str();
      })
      .def(py::self == py::self);

  m.def("parse_graph", py::overload_cast<const std::string&>(&parse_graph), py::arg("text"));
  m.def("generate_random_graph", &generate_random_graph, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("cut_value", [](const Graph& g, std::size_t k, const std::vector<State>& s) {
    return cut_value(g, to_assignment(k, s));
  }, py::arg("graph"), py::arg("k"), py::arg("states"));
  m.def("energy", [](const Graph& g, std::size_t k, const std::vector<State>& s) {
    return energy(g, to_assignment(k, s));
  }, py::arg("graph"), py::arg("k"), py::arg("states"));
  m.def("synaptic_input", [](const Graph& g, std::size_t k, const std::vector<State>& s, NodeId alpha) {
    return synaptic_input(g, to_assignment(k, s), alpha);
  }, py::arg("graph"), py::arg("k"), py::arg("states"), py::arg("alpha"));

  m.def("retention_probability", &retention_probability, py::arg("phi"), py::arg("beta"));

  m.def("run_trials",
        [](const Graph& g, std::size_t k, std::size_t sweeps, std::size_t trials, std::uint64_t seed, double beta,
           std::optional<std::pair<double, double>> beta_ramp, const std::string& order, std::size_t threads) {
          TrialBatch batch;
          {
            py::gil_scoped_release release;
            batch = run_trials(g, make_config(k, sweeps, trials, seed, beta, beta_ramp, order, threads));
          }
          std::vector<std::size_t> best;
          std::vector<std::vector<std::size_t>> traces;
          std::vector<std::vector<State>> assignments;
          for (const auto& t : batch.trials) {
            best.push_back(t.best_cut);
            traces.push_back(t.cut_trace);
            assignments.push_back(states_of(t.best_assignment));
          }
          py::dict d = batch_dict(best, batch.histogram, batch.mean_best, batch.max_best);
          d["cut_traces"] = traces;
          d["best_assignments"] = assignments;
          return d;
        },
        py::arg("graph"), py::arg("k") = 3, py::arg("sweeps") = 1000, py::arg("trials") = 100, py::arg("seed") = 0,
        py::arg("beta") = 1.0, py::arg("beta_ramp") = py::none(), py::arg("order") = "random",
        py::arg("threads") = 1);

  m.def("run_baseline",
        [](const Graph& g, std::size_t k, std::size_t sweeps, std::size_t trials, std::uint64_t seed, double beta,
           std::optional<double> penalty_a, std::optional<double> penalty_b, const std::string& repair,
           std::size_t threads) {
          const Penalties p = default_penalties(g);
          const OneHotEncoding enc = encode_one_hot(g, k, penalty_a.value_or(p.a), penalty_b.value_or(p.b));
          if (repair != "random" && repair != "first-hot") throw std::invalid_argument("unknown repair rule");
          BaselineBatch batch;
          {
            py::gil_scoped_release release;
            batch = run_baseline_trials(g, enc, make_config(k, sweeps, trials, seed, beta, std::nullopt, "random", threads),
                                        repair == "first-hot" ? RepairRule::FirstHot : RepairRule::Random);
          }
          std::vector<std::size_t> best;
          for (const auto& t : batch.trials) best.push_back(t.best_cut);
          py::dict d = batch_dict(best, batch.histogram, batch.mean_best, batch.max_best);
          d["n_spins"] = enc.model.n_spins();
          d["penalty_a"] = enc.map.penalty_a;
          d["penalty_b"] = enc.map.penalty_b;
          return d;
        },
        py::arg("graph"), py::arg("k") = 3, py::arg("sweeps") = 1000, py::arg("trials") = 100, py::arg("seed") = 0,
        py::arg("beta") = 1.0, py::arg("penalty_a") = py::none(), py::arg("penalty_b") = py::none(),
        py::arg("repair") = "random", py::arg("threads") = 1);

  m.def("brute_force_max_k_cut", [](const Graph& g, std::size_t k) {
    const OracleResult r = brute_force_max_k_cut(g, k);
    return py::make_tuple(r.cut, states_of(r.assignment));
  }, py::arg("graph"), py::arg("k"));

  m.def("chi_square_uniform", [](const std::vector<std::uint64_t>& counts) {
    const ChiSquareResult r = chi_square_uniform(counts);
    py::dict d;
    d["statistic"] = r.statistic;
    d["dof"] = r.dof;
    d["critical"] = r.critical;
    d["pass"] = r.pass;
    return d;
  }, py::arg("counts"));

  m.def("probcurve", [](std::size_t k, double beta, const std::vector<double>& phis, std::size_t samples,
                        std::uint64_t seed) {
    RngStream rng(seed);
    py::list rows;
    for (const auto& r : probcurve(k, beta, phis, samples, rng)) {
      py::dict d;
      d["phi"] = r.phi;
      d["p_retain_mc"] = r.p_retain_mc;
      d["p_retain_analytic"] = r.p_retain_analytic;
      d["p_alt_mc"] = r.p_alt_mc;
      d["p_alt_analytic"] = r.p_alt_analytic;
      rows.append(d);
    }
    return rows;
  }, py::arg("k"), py::arg("beta"), py::arg("phis"), py::arg("samples"), py::arg("seed") = 0);

  m.def("current_bounds", [](std::size_t m_branches, double r_ins, double r_met, double i_trig, double r_series) {
    Vo2Device dev;
    dev.r_ins = r_ins;
    dev.r_met = r_met;
    dev.i_trig_nominal = i_trig;
    const CurrentBounds b = current_bounds(MultiStateCell::uniform(m_branches, dev, r_series, 0.0));
    return py::make_tuple(b.lower, b.upper);
  }, py::arg("branches") = 4, py::arg("r_ins") = 20e3, py::arg("r_met") = 1e3, py::arg("i_trig") = 30e-6,
     py::arg("r_series") = 2e3);

  m.def("simulate_cycles", [](std::size_t m_branches, double current, std::size_t cycles, double sigma_it,
                              std::uint64_t seed) {
    Vo2Device dev;
    dev.sigma_trig = sigma_it;
    RngStream rng(seed);
    const CycleStats s = simulate_cycles(MultiStateCell::uniform(m_branches, dev, 2e3, current), cycles, rng);
    py::dict d;
    d["counts"] = s.counts;
    d["selected"] = s.selected;
    d["triggers"] = s.triggers;
    return d;
  }, py::arg("branches") = 4, py::arg("current") = 200e-6, py::arg("cycles") = 2000, py::arg("sigma_it") = 1.5e-6,
     py::arg("seed") = 0);
}
