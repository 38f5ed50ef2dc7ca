#include <doctest.h>

#include "fixtures.hpp"
#include "waso/oracle.hpp"
#include "waso/scenarios.hpp"

using namespace waso;
using waso::test::group;
using waso::test::v;

namespace {

SocialGraph two_triangles() {
  const std::pair<NodeId, NodeId> e[] = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  return test::unit_graph(6, e);
}

bool contains(const std::vector<NodeId>& s, NodeId x) {
  return std::binary_search(s.begin(), s.end(), x);
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("couple merge sums interest and tightness") {
  const SocialGraph g = test::example_graph();
  const auto m = scenario::merge_couple(g, v(5), v(3));
  REQUIRE(m.graph.size() == 9);
  CHECK(m.merged == v(3));
  CHECK(m.old_to_new[v(5)] == m.merged);
  CHECK(m.graph.label(m.merged) == "3+5");
  CHECK(m.graph.node(m.merged).eta == doctest::Approx(1.8));
  // 1 touches both 3 (0.6) and 5 (0.9)
  const NodeId one = m.old_to_new[v(1)];
  CHECK(m.graph.tightness(m.merged, one) == doctest::Approx(0.75));
  CHECK(m.graph.tightness(one, m.merged) == doctest::Approx(0.75));
  CHECK_FALSE(m.graph.has_edge(m.merged, m.merged));
}

TEST_CASE("merged triangle") {
  GraphBuilder b;
  for (int i = 0; i < 3; ++i) b.add_node(1.0);
  b.add_undirected(0, 1, 1.0);
  b.add_undirected(1, 2, 1.0);
  b.add_undirected(0, 2, 1.0);
  const auto m = scenario::merge_couple(b.build(), 0, 1);
  CHECK(m.graph.size() == 2);
  CHECK(m.graph.num_directed_edges() == 2);
  CHECK(m.graph.tightness(0, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(scenario::merge_couple(m.graph, 1, 1), Error);
}

TEST_CASE("merge keeps group values up to the couple's own tie") {
  const SocialGraph g = test::example_graph();
  const NodeId i = v(6), j = v(7);
  const auto m = scenario::merge_couple(g, i, j);
  const double internal = g.tightness(i, j) + g.tightness(j, i);
  test::for_each_subset(10, 4, [&](std::span<const NodeId> s) {
    const bool hi = std::find(s.begin(), s.end(), i) != s.end();
    const bool hj = std::find(s.begin(), s.end(), j) != s.end();
    if (hi != hj) return;
    std::vector<NodeId> mapped;
    for (NodeId u : s) mapped.push_back(m.old_to_new[u]);
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    const double want = willingness(g, s) - (hi ? internal : 0.0);
    CHECK(willingness(m.graph, mapped) == doctest::Approx(want));
  });
}

TEST_CASE("foe penalty") {
  const SocialGraph g = test::example_graph();
  CHECK(scenario::default_foe_penalty(g, v(3), v(5)) == doctest::Approx(19.3));
  const SocialGraph f = scenario::mark_foe(g, v(3), v(5));
  CHECK(f.tightness(v(3), v(5)) == doctest::Approx(-19.3));
  CHECK(f.tightness(v(5), v(3)) == doctest::Approx(-19.3));
  const SocialGraph twice = scenario::mark_foe(f, v(3), v(5));
  CHECK(twice.tightness(v(3), v(5)) == f.tightness(v(3), v(5)));

  const Solution s = oracle::brute_force(f, 5);
  CHECK_FALSE((contains(s.members, v(3)) && contains(s.members, v(5))));
  CHECK(s.willingness < 9.7);
  CHECK(scenario::mark_foe(g, 0, 1, 2.5).tightness(0, 1) == -2.5);
  CHECK_THROWS_AS(scenario::mark_foe(g, 0, 1, -1.0), Error);
}

TEST_CASE("foe between non-neighbours adds the edge") {
  const SocialGraph g = test::example_graph();
  const SocialGraph f = scenario::mark_foe(g, v(1), v(10));
  CHECK(f.adjacent(v(1), v(10)));
  CHECK(f.tightness(v(1), v(10)) < -10.0);
}

TEST_CASE("lambda profiles") {
  const SocialGraph g = test::example_graph();
  const auto all = group({3, 4, 5, 6, 7});

  const auto ex = scenario::apply_lambda_profile(g, scenario::Profile::Exhibition);
  double eta = 0;
  for (NodeId u : all) eta += g.node(u).eta;
  CHECK(willingness(ex.graph, all, WeightMode::LambdaWeighted) == doctest::Approx(eta));

  const auto party = scenario::apply_lambda_profile(g, scenario::Profile::Party);
  CHECK(willingness(party.graph, all, WeightMode::LambdaWeighted) ==
        doctest::Approx(willingness(g, all) - eta));

  const SocialGraph star = test::star_graph(4, 3.0, 1.0, 2.0);
  GraphBuilder b;
  for (NodeId u = 0; u < star.size(); ++u) b.add_node(1.0);
  b.add_undirected(0, 1, 1.0);
  b.add_undirected(1, 2, 1.0);
  b.add_undirected(2, 3, 1.0);
  const auto inv = scenario::apply_lambda_profile(b.build(), scenario::Profile::Invitation, 1);
  CHECK(inv.new_to_old == std::vector<NodeId>{0, 1, 2});
  CHECK(inv.graph.node(1).lambda == 0.5);
  CHECK(inv.graph.node(0).lambda == 1.0);
  CHECK(inv.graph.node(2).lambda == 1.0);

  const auto hub = scenario::apply_lambda_profile(star, scenario::Profile::Invitation, 0);
  CHECK(hub.graph.size() == 5);
}

TEST_CASE("invitation from an isolated host") {
  GraphBuilder b;
  b.add_node(1.0);
  b.add_node(1.0);
  b.add_node(1.0);
  b.add_undirected(0, 1, 1.0);
  try {
    scenario::apply_lambda_profile(b.build(), scenario::Profile::Invitation, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCandidate);
  }
}

TEST_CASE("virtual node") {
  GraphBuilder b;
  b.add_node(2.0);
  b.add_node(-3.0);
  b.add_undirected(0, 1, 5.0);
  const auto vn = scenario::add_virtual_node(b.build());
  CHECK(vn.id == 2);
  CHECK(vn.graph.node(2).eta == doctest::Approx(11.0));
  CHECK(vn.graph.adjacent(2, 0));
  CHECK(vn.graph.tightness(2, 1) == 0.0);
  CHECK(vn.graph.node(2).lambda == 1.0);
  CHECK(scenario::add_virtual_node(b.build(), 0.5).graph.node(2).eta == doctest::Approx(10.5));
  CHECK_THROWS_AS(scenario::add_virtual_node(b.build(), 0.0), Error);
}

TEST_CASE("any best k+1 group on the augmented graph holds the virtual node") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SocialGraph g = test::random_instance(8, seed, 0.3);
    const auto vn = scenario::add_virtual_node(g);
    const Solution s = oracle::brute_force(vn.graph, 4);
    CHECK(contains(s.members, vn.id));
    CHECK(s.willingness - vn.graph.node(vn.id).eta ==
          doctest::Approx(oracle::brute_force_dis(g, 3).willingness));
  }
}

TEST_CASE("separate groups") {
  const SocialGraph g = two_triangles();
  SolverConfig c;
  c.budget = 500;
  c.k = 3;
  auto out = scenario::solve_waso_dis(g, c);
  CHECK(out.solution.willingness == 6.0);
  CHECK(out.solution.connected);
  c.k = 6;
  out = scenario::solve_waso_dis(g, c);
  CHECK(out.solution.willingness == 12.0);
  CHECK_FALSE(out.solution.connected);
  for (NodeId s : out.report.starts) CHECK(s < 6);

  GraphBuilder b;
  for (double eta : {0.5, 3.0, 1.0, 2.0}) b.add_node(eta);
  c.k = 2;
  const auto iso = scenario::solve_waso_dis(b.build(), c);
  CHECK(iso.solution.members == std::vector<NodeId>{1, 3});
  CHECK(iso.solution.willingness == 5.0);
}

TEST_CASE("scenario JSON") {
  const auto foe = scenario::parse_scenario(
      R"({"kind":"foe","params":{"pairs":[["3",5]],"penalty":4}})");
  CHECK(foe.kind == scenario::Kind::Foe);
  REQUIRE(foe.pairs.size() == 1);
  CHECK(foe.pairs[0] == std::pair<std::string, std::string>{"3", "5"});
  CHECK(*foe.penalty == 4.0);
  const auto back = scenario::parse_scenario(scenario::to_json(foe));
  CHECK(back.kind == foe.kind);
  CHECK(back.pairs == foe.pairs);
  CHECK(back.penalty == foe.penalty);

  const auto sep = scenario::parse_scenario(R"({"kind":"separate-groups","params":{"epsilon":2}})");
  CHECK(scenario::parse_scenario(scenario::to_json(sep)).epsilon == 2.0);

  CHECK_THROWS_AS(scenario::parse_scenario("{"), Error);
  CHECK_THROWS_AS(scenario::parse_scenario(R"({"kind":"wedding"})"), Error);
  CHECK_THROWS_AS(scenario::parse_scenario(R"({"kind":"couple"})"), Error);
  CHECK_THROWS_AS(scenario::parse_scenario(R"({"kind":"invitation"})"), Error);
  CHECK_THROWS_AS(scenario::parse_scenario(R"({"kind":"foe","params":{"pairs":[[1]]}})"), Error);
}

TEST_CASE("prepared scenarios") {
  const SocialGraph g = test::example_graph();
  const auto couple =
      scenario::apply_scenario(g, scenario::parse_scenario(R"({"kind":"couple","params":{"pairs":[[6,7]]}})"));
  CHECK(couple.graph.size() == 9);
  CHECK(couple.warnings.size() == 1);

  const auto party = scenario::apply_scenario(g, scenario::parse_scenario(R"({"kind":"party"})"));
  CHECK(party.mode == WeightMode::LambdaWeighted);

  const auto inv = scenario::apply_scenario(
      g, scenario::parse_scenario(R"({"kind":"invitation","params":{"host":"10"}})"));
  CHECK(inv.graph.size() == 5);

  const auto sep =
      scenario::apply_scenario(g, scenario::parse_scenario(R"({"kind":"separate-groups"})"));
  CHECK(sep.disconnected_allowed);
  SolverConfig c;
  c.k = 3;
  c.budget = 300;
  const auto out = scenario::solve_prepared(sep, c);
  CHECK(out.solution.members.size() == 3);

  const auto foe = scenario::apply_scenario(
      g, scenario::parse_scenario(R"({"kind":"foe","params":{"pairs":[[3,5]]}})"));
  c.k = 5;
  c.budget = 2000;
  const auto f = scenario::solve_prepared(foe, c);
  CHECK_FALSE((contains(f.solution.members, v(3)) && contains(f.solution.members, v(5))));
  CHECK_THROWS_AS(scenario::apply_scenario(
                      g, scenario::parse_scenario(R"({"kind":"foe","params":{"pairs":[[3,99]]}})")),
                  Error);
}

}
