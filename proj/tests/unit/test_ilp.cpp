#include <doctest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "ilp_check.hpp"
#include "waso/ilp.hpp"
#include "waso/oracle.hpp"

using namespace waso;
using waso::test::IlpChecker;

namespace {

SocialGraph triangle() {
  GraphBuilder b;
  b.add_node(0.25, 0.5, "a");
  b.add_node(0.5, 0.5, "b");
  b.add_node(0.75, 0.5, "c");
  b.add_undirected(0, 1, 1.0);
  b.add_undirected(1, 2, 0.5);
  b.add_undirected(0, 2, 0.25);
  return b.build();
}

std::set<std::vector<NodeId>> connected_sets(const SocialGraph& g, std::size_t k) {
  std::set<std::vector<NodeId>> out;
  oracle::for_each_connected_subset(
      g, k, [&](std::span<const NodeId> s) { out.emplace(s.begin(), s.end()); });
  return out;
}

}  // namespace

TEST_SUITE("ilp") {

TEST_CASE("triangle admits exactly its pairs") {
  const SocialGraph g = triangle();
  const auto model = ilp::export_ilp(g, 2);
  IlpChecker check(model, g);
  const auto sets = check.admitted_sets();
  CHECK(std::set<std::vector<NodeId>>(sets.begin(), sets.end()) == connected_sets(g, 2));
  CHECK_FALSE(check.incomplete());
  for (const auto& s : sets) {
    const auto v = check.check(s);
    CHECK(model.objective_value(v.witness) == willingness(g, s));
  }
}

TEST_CASE("single-node model picks the top interest") {
  const SocialGraph g = triangle();
  const auto model = ilp::export_ilp(g, 1);
  IlpChecker check(model, g);
  double best = -1e300;
  for (const auto& s : check.admitted_sets()) {
    CHECK(s.size() == 1);
    best = std::max(best, model.objective_value(check.check(s).witness));
  }
  CHECK(best == 0.75);
}

TEST_CASE("path-edge bound decides whether a gap is admitted") {
  const SocialGraph p = test::path_graph(3, 1.0, 1.0);
  const std::vector<NodeId> gap{0, 2};

  const auto strict = ilp::export_ilp(p, 2);
  const auto v = IlpChecker(strict, p).check(gap);
  CHECK_FALSE(v.admitted);

  ilp::IlpOptions lit;
  lit.path_edges = ilp::PathEdgeBound::PaperLiteral;
  const auto loose = ilp::export_ilp(p, 2, lit);
  const auto w = IlpChecker(loose, p).check(gap);
  CHECK(w.admitted);
  CHECK(loose.first_violation(w.witness) == ilp::IlpModel::npos);
}

TEST_CASE("feasible sets are the connected k-groups on random graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t n = 4 + seed % 4;
    const std::size_t k = 2 + seed % 3;
    if (k > n) continue;
    const SocialGraph g = test::random_instance(n, seed, 1.0, true);
    const auto model = ilp::export_ilp(g, k);
    IlpChecker check(model, g);
    const auto sets = check.admitted_sets();
    CHECK_FALSE(check.incomplete());
    CHECK(std::set<std::vector<NodeId>>(sets.begin(), sets.end()) == connected_sets(g, k));
    double best = -1e300;
    for (const auto& s : sets) {
      best = std::max(best, model.objective_value(check.check(s).witness));
    }
    CHECK(best == oracle::brute_force(g, k).willingness);
  }
}

TEST_CASE("negative pair terms cannot be switched off") {
  GraphBuilder b;
  b.add_node(2.0);
  b.add_node(2.0);
  b.add_undirected(0, 1, -3.0);
  const SocialGraph g = b.build();
  const auto model = ilp::export_ilp(g, 2);
  CHECK(model.has_var(ilp::y_name(0, 1)));
  std::size_t rows = 0;
  for (const auto& c : model.constraints) {
    if (c.name.rfind("B2n_", 0) == 0) ++rows;
  }
  CHECK(rows == 2);
  const auto v = IlpChecker(model, g).check(std::vector<NodeId>{0, 1});
  REQUIRE(v.admitted);
  CHECK(model.objective_value(v.witness) == 1.0);
  auto dropped = v.witness;
  dropped[model.var(ilp::y_name(0, 1))] = 0.0;
  dropped[model.var(ilp::y_name(1, 0))] = 0.0;
  CHECK(model.first_violation(dropped) != ilp::IlpModel::npos);
}

TEST_CASE("variables and families") {
  const SocialGraph g = triangle();
  const auto model = ilp::export_ilp(g, 2);
  CHECK(model.var("x_0") == model.var(ilp::x_name(0)));
  CHECK(model.has_var(ilp::r_name(2)));
  CHECK(model.has_var(ilp::p_name(0, 1, 0, 1)));
  CHECK(model.has_var(ilp::d_name(0, 1, 2)));
  CHECK_FALSE(model.has_var(ilp::y_name(0, 0)));
  CHECK_THROWS_AS(model.var("nope"), Error);
  const auto& d = model.variables[model.var(ilp::d_name(0, 1, 2))];
  CHECK(d.type == ilp::VarType::Integer);
  CHECK(d.upper == 3.0);
  std::set<ilp::Family> fams;
  for (const auto& c : model.constraints) fams.insert(c.family);
  CHECK(fams.size() == 9);
}

TEST_CASE("LP text") {
  const SocialGraph g = triangle();
  std::ostringstream out;
  ilp::write_lp(out, ilp::export_ilp(g, 2));
  const std::string lp = out.str();
  for (const char* section : {"Maximize", "Subject To", "Bounds", "Binary", "General", "End"}) {
    CHECK(lp.find(section) != std::string::npos);
  }
  CHECK(lp.find("Maximize") < lp.find("Subject To"));
  CHECK(lp.find("Subject To") < lp.find("Bounds"));
  CHECK(lp.find(" x_0") != std::string::npos);
}

TEST_CASE("export guard") {
  const SocialGraph big = test::path_graph(61);
  try {
    ilp::export_ilp(big, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ScaleGuard);
  }
  ilp::IlpOptions o;
  o.override_guard = true;
  CHECK_FALSE(ilp::export_ilp(test::path_graph(12), 3, o).constraints.empty());
  CHECK_THROWS_AS(ilp::export_ilp(triangle(), 4), Error);
}

}
