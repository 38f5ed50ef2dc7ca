#include <doctest.h>

#include <utility>

#include "fixtures.hpp"
#include "waso/graph.hpp"

using namespace waso;
using waso::test::group;
using waso::test::v;

TEST_SUITE("graph") {

TEST_CASE("willingness of single and paired members") {
  const SocialGraph g = test::example_graph();
  CHECK(willingness(g, group({3})) == doctest::Approx(0.8));
  CHECK(willingness(g, group({3, 6})) == doctest::Approx(2.1));
  CHECK(g.tightness(v(3), v(6)) == doctest::Approx(0.2));
  CHECK(g.tightness(v(6), v(3)) == doctest::Approx(0.2));
  CHECK(willingness(g, std::vector<NodeId>{}) == 0.0);
}

TEST_CASE("willingness rejects unknown ids") {
  const SocialGraph g = test::example_graph();
  const std::vector<NodeId> bad{0, 42};
  CHECK_THROWS_AS(willingness(g, bad), Error);
}

TEST_CASE("unit graphs count twice the induced edges") {
  const std::pair<NodeId, NodeId> e[] = {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}};
  const SocialGraph g = test::unit_graph(5, e);
  CHECK(willingness(g, std::vector<NodeId>{0, 1, 2}) == 6.0);
  CHECK(willingness(g, std::vector<NodeId>{0, 1, 2, 3}) == 8.0);
  CHECK(willingness(g, std::vector<NodeId>{0, 3}) == 0.0);
}

TEST_CASE("lambda weighted willingness") {
  GraphBuilder b;
  b.add_node(2.0, 0.25, "a");
  b.add_node(4.0, 1.0, "b");
  b.set_tightness(0, 1, 8.0);
  b.set_tightness(1, 0, 3.0);
  const SocialGraph g = b.build();
  const std::vector<NodeId> both{0, 1};
  // 0.25*2 + 0.75*8 + 1*4 + 0*3
  CHECK(willingness(g, both, WeightMode::LambdaWeighted) == doctest::Approx(10.5));
  CHECK(willingness(g, both) == doctest::Approx(17.0));
}

TEST_CASE("asymmetric tightness is stored per direction") {
  GraphBuilder b;
  b.add_node(0.0);
  b.add_node(0.0);
  b.set_tightness(0, 1, 0.7);
  const SocialGraph g = b.build();
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 0));
  CHECK(g.adjacent(1, 0));
  CHECK(g.tightness(1, 0) == 0.0);
  CHECK(g.num_directed_edges() == 1);
}

TEST_CASE("isolated node adds only its own interest") {
  GraphBuilder b;
  b.add_node(1.0, 0.3);
  b.add_node(2.0, 0.3);
  b.add_node(5.0, 0.4);
  b.add_undirected(0, 1, 1.0);
  const SocialGraph g = b.build();
  const std::vector<NodeId> f{0, 1};
  const std::vector<NodeId> fu{0, 1, 2};
  CHECK(willingness(g, fu) - willingness(g, f) == doctest::Approx(5.0));
  CHECK(willingness(g, fu, WeightMode::LambdaWeighted) -
            willingness(g, f, WeightMode::LambdaWeighted) ==
        doctest::Approx(0.4 * 5.0));
}

TEST_CASE("connectivity") {
  const SocialGraph p = test::path_graph(3);
  CHECK(is_connected(p, std::vector<NodeId>{1}));
  CHECK_FALSE(is_connected(p, std::vector<NodeId>{0, 2}));
  CHECK(is_connected(p, std::vector<NodeId>{0, 1, 2}));
  CHECK_THROWS_AS(is_connected(p, std::vector<NodeId>{}), Error);

  GraphBuilder b;
  b.add_node(1);
  b.add_node(1);
  const SocialGraph two = b.build();
  CHECK_FALSE(is_connected(two, std::vector<NodeId>{0, 1}));
}

TEST_CASE("frontier") {
  const SocialGraph g = test::example_graph();
  CHECK(frontier(g, group({3})) == group({1, 2, 4, 5, 6}));
  const SocialGraph star = test::star_graph(4, 0, 1, 1);
  CHECK(frontier(star, std::vector<NodeId>{0}) == std::vector<NodeId>{1, 2, 3, 4});
  CHECK(frontier(star, std::vector<NodeId>{0, 1, 2, 3, 4}).empty());
}

TEST_CASE("node mass and components") {
  const SocialGraph g = test::example_graph();
  CHECK(node_mass(g, v(3)) == doctest::Approx(4.2));
  CHECK(node_mass(g, v(10)) == doctest::Approx(4.2));
  CHECK(g.largest_component() == 10);
  CHECK(g.find("7") == v(7));
  CHECK_THROWS_AS(g.find("nope"), Error);
}

TEST_CASE("induced subgraph keeps weights and maps ids") {
  const SocialGraph g = test::example_graph();
  std::vector<NodeId> map;
  const SocialGraph sub = induced_subgraph(g, group({3, 5, 6}), &map);
  CHECK(sub.size() == 3);
  CHECK(map[v(1)] == kInvalidNode);
  CHECK(sub.label(map[v(5)]) == "5");
  CHECK(sub.tightness(map[v(3)], map[v(5)]) == doctest::Approx(0.5));
  CHECK(willingness(sub, std::vector<NodeId>{0, 1, 2}) ==
        doctest::Approx(willingness(g, group({3, 5, 6}))));
}

TEST_CASE("make_solution recomputes from scratch") {
  const SocialGraph g = test::example_graph();
  const Solution s = make_solution(g, {v(7), v(3), v(5), v(6), v(4)});
  CHECK(s.members == group({3, 4, 5, 6, 7}));
  CHECK(s.willingness == doctest::Approx(9.7));
  CHECK(s.connected);
}

TEST_CASE("group preference breaks ties lexicographically") {
  const std::vector<NodeId> a{0, 2}, b{1, 2};
  CHECK(better_group(1.0, a, 1.0, b));
  CHECK_FALSE(better_group(1.0, b, 1.0, a));
  CHECK(better_group(2.0, b, 1.0, a));
}

TEST_CASE("builder rejects bad input") {
  GraphBuilder b;
  b.add_node(1.0);
  CHECK_THROWS_AS(b.set_tightness(0, 0, 1.0), Error);
  CHECK_THROWS_AS(b.set_tightness(0, 3, 1.0), Error);
  CHECK_THROWS_AS(b.add_node(1.0, 1.5), Error);
}

}
