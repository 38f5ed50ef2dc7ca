#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "waso/oracle.hpp"

using namespace waso;

TEST_SUITE("oracle") {

TEST_CASE("extreme group sizes") {
  const SocialGraph g = test::random_instance(12, 3);
  const Solution one = oracle::brute_force(g, 1);
  NodeId top = 0;
  for (NodeId i = 1; i < 12; ++i) {
    if (g.node(i).eta > g.node(top).eta) top = i;
  }
  CHECK(one.members == std::vector<NodeId>{top});
  const Solution all = oracle::brute_force(g, 12);
  CHECK(all.members.size() == 12);
  CHECK(all.willingness == doctest::Approx(willingness(g, all.members)));
}

TEST_CASE("worked example optimum") {
  const Solution s = oracle::brute_force(test::example_graph(), 5);
  CHECK(s.members == test::group({3, 4, 5, 6, 7}));
  CHECK(s.willingness == doctest::Approx(9.7));
  CHECK(s.connected);
}

TEST_CASE("densest connected subgraph on unit weights") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SocialGraph r = test::random_instance(10, seed, 2.0);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < 10; ++i) {
      for (const Neighbor& nb : r.neighbors(i)) {
        if (nb.id > i) edges.emplace_back(i, nb.id);
      }
    }
    const SocialGraph g = test::unit_graph(10, edges);
    for (std::size_t k = 2; k <= 5; ++k) {
      double naive = -1.0;
      test::for_each_subset(10, k, [&](std::span<const NodeId> s) {
        if (!is_connected(g, s)) return;
        double q = 0;
        for (auto [a, b] : edges) {
          if (std::find(s.begin(), s.end(), a) != s.end() &&
              std::find(s.begin(), s.end(), b) != s.end()) {
            q += 1;
          }
        }
        naive = std::max(naive, 2 * q);
      });
      CHECK(oracle::brute_force(g, k).willingness == naive);
    }
  }
}

TEST_CASE("connected subsets are each visited once") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const std::size_t n = 6 + seed;
    const SocialGraph g = test::random_instance(n, seed, 1.0);
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 6); ++k) {
      std::size_t naive = 0;
      test::for_each_subset(n, k, [&](std::span<const NodeId> s) {
        if (is_connected(g, s)) ++naive;
      });
      std::set<std::vector<NodeId>> seen;
      std::size_t visits = 0;
      oracle::for_each_connected_subset(g, k, [&](std::span<const NodeId> s) {
        ++visits;
        CHECK(std::is_sorted(s.begin(), s.end()));
        seen.emplace(s.begin(), s.end());
      });
      CHECK(visits == naive);
      CHECK(seen.size() == naive);
    }
  }
}

TEST_CASE("unconstrained optimum on isolated nodes is the top-k interest") {
  GraphBuilder b;
  for (double eta : {0.3, 2.0, 1.5, -1.0, 0.9, 4.0}) b.add_node(eta);
  const SocialGraph g = b.build();
  const Solution s = oracle::brute_force_dis(g, 3);
  CHECK(s.members == std::vector<NodeId>{1, 2, 5});
  CHECK(s.willingness == doctest::Approx(7.5));
  CHECK_FALSE(s.connected);
  try {
    oracle::brute_force(g, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
}

TEST_CASE("unconstrained optimum dominates the connected one") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SocialGraph g = test::random_instance(9, seed, 0.5);
    CHECK(oracle::brute_force_dis(g, 4).willingness >=
          oracle::brute_force(g, 4).willingness - 1e-12);
  }
}

TEST_CASE("scale guard") {
  const SocialGraph g = test::path_graph(26);
  try {
    oracle::brute_force(g, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ScaleGuard);
  }
  oracle::BruteForceOptions o;
  o.override_guard = true;
  CHECK(oracle::brute_force(g, 3, o).willingness == doctest::Approx(3 + 2));
  CHECK_THROWS_AS(oracle::brute_force(g, 0, o), Error);
}

TEST_CASE("binomial") {
  CHECK(oracle::binomial(10, 5) == 252);
  CHECK(oracle::binomial(25, 12) == 5200300);
  CHECK(oracle::binomial(3, 4) == 0);
  CHECK(oracle::binomial(7, 0) == 1);
}

TEST_CASE("lambda-weighted exhaustive search") {
  const SocialGraph g = test::example_graph();
  oracle::BruteForceOptions o;
  o.mode = WeightMode::LambdaWeighted;
  const Solution s = oracle::brute_force(g, 5, o);
  double best = -1e300;
  oracle::for_each_connected_subset(g, 5, [&](std::span<const NodeId> m) {
    best = std::max(best, willingness(g, m, WeightMode::LambdaWeighted));
  });
  CHECK(s.willingness == doctest::Approx(best));
}

}
