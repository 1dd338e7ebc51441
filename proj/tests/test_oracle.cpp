#include <doctest.h>

#include "kpbit/oracle.hpp"
#include "kpbit/rng.hpp"
#include "test_support.hpp"

using namespace kpbit;
using namespace kpbit::testing;

TEST_CASE("brute force on named graphs") {
  CHECK(brute_force_max_k_cut(triangle(), 3).cut == 3);
  CHECK(brute_force_max_k_cut(complete(4), 3).cut == 5);
  CHECK(brute_force_max_k_cut(cycle(5), 3).cut == 5);
  CHECK(brute_force_max_k_cut(cycle(5), 2).cut == 4);
  CHECK(brute_force_max_k_cut(Graph(0, {}), 3).cut == 0);

  // Same values from the naive enumerator.
  CHECK(naive_max_k_cut(complete(4), 3) == 5);
  CHECK(naive_max_k_cut(cycle(5), 3) == 5);
}

TEST_CASE("brute force agrees with naive enumeration on random graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const std::size_t k = 2 + seed % 3;
    const Graph g = generate_random_graph(n, 0.5, seed);
    const OracleResult r = brute_force_max_k_cut(g, k);
    CHECK(r.cut == naive_max_k_cut(g, k));
    CHECK(cut_value(g, r.assignment) == r.cut);
    CHECK(r.assignment[0] == 0);
  }
}

TEST_CASE("oracle invariants") {
  const Graph g = generate_random_graph(7, 0.6, 3);
  // k >= n: every edge is cut.
  CHECK(brute_force_max_k_cut(g, 7).cut == g.num_edges());

  // Relabeling nodes does not change the optimum.
  std::vector<NodeId> perm{6, 2, 4, 0, 1, 5, 3};
  std::vector<Edge> relabeled;
  for (const Edge& e : g.edges()) relabeled.push_back({perm[e.u], perm[e.v]});
  CHECK(brute_force_max_k_cut(Graph(7, relabeled), 3).cut == brute_force_max_k_cut(g, 3).cut);
}

TEST_CASE("oracle size guard") {
  CHECK_THROWS_AS(brute_force_max_k_cut(generate_random_graph(30, 0.3, 1), 3), InstanceTooLarge);
  CHECK_NOTHROW(brute_force_max_k_cut(Graph(10, {}), 3));
  CHECK_THROWS_AS(brute_force_max_k_cut(Graph(10, {}), 3, 1000.0), InstanceTooLarge);
}

TEST_CASE("chi_square_uniform") {
  const std::uint64_t flat[] = {500, 500, 500, 500};
  const auto r = chi_square_uniform(flat);
  CHECK(r.statistic == 0.0);
  CHECK(r.dof == 3);
  CHECK(r.critical == doctest::Approx(16.26623619623813).epsilon(1e-9));
  CHECK(r.pass);

  const std::uint64_t skew[] = {2000, 0, 0, 0};
  const auto s = chi_square_uniform(skew);
  CHECK(s.statistic == doctest::Approx(6000.0));
  CHECK_FALSE(s.pass);

  const std::uint64_t two[] = {60, 40};
  CHECK(chi_square_uniform(two).critical == doctest::Approx(10.827566170662733).epsilon(1e-9));

  const std::uint64_t one[] = {5};
  CHECK_THROWS_AS(chi_square_uniform(one), std::invalid_argument);
  const std::uint64_t zero[] = {0, 0};
  CHECK_THROWS_AS(chi_square_uniform(zero), std::invalid_argument);
}

TEST_CASE("chi_square_uniform rejects truly uniform samples at about the nominal rate") {
  RngStream rng(123);
  int failures = 0;
  const int reps = 2000;
  for (int rep = 0; rep < reps; ++rep) {
    std::uint64_t counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 2000; ++i) ++counts[rng.uniform_int(4)];
    failures += !chi_square_uniform(counts).pass;
  }
  // Expected 2 failures at alpha = 0.001; Poisson(2) exceeds 10 with probability < 1e-4.
  CHECK(failures <= 10);
}
