#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "sandtorsor/enumerate.hpp"

using namespace sandtorsor;

namespace {

// Faces as orbits of "arrive along e at w, leave along the edge after e at w", from the raw rotation lists.
int genus_by_orbits(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  std::vector<std::vector<bool>> seen(g.edge_count(), std::vector<bool>(2, false));
  auto side = [&](std::size_t e, std::size_t from) { return from == g.ends(e).first ? 0 : 1; };
  int faces = 0;
  for (std::size_t e0 = 0; e0 < g.edge_count(); ++e0)
    for (std::size_t from0 : {g.ends(e0).first, g.ends(e0).second}) {
      if (seen[e0][side(e0, from0)]) continue;
      ++faces;
      std::size_t e = e0, from = from0;
      while (!seen[e][side(e, from)]) {
        seen[e][side(e, from)] = true;
        std::size_t w = g.other_end(e, from);
        const auto& order = rg.rotation(w);
        auto it = std::find(order.begin(), order.end(), e);
        std::size_t next = order[(static_cast<std::size_t>(it - order.begin()) + 1) % order.size()];
        e = next;
        from = w;
      }
    }
  int chi = static_cast<int>(g.vertex_count()) - static_cast<int>(g.edge_count()) + faces;
  return (2 - chi) / 2;
}

// Every rotation system of g: each vertex's incident edges with the first fixed and the rest permuted.
std::vector<RibbonGraph> all_rotation_systems(const Multigraph& g) {
  std::vector<std::vector<std::size_t>> current(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) current[v] = g.incident_edges(v);
  std::vector<RibbonGraph> out;
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == g.vertex_count()) {
      out.emplace_back(g, current);
      return;
    }
    auto& order = current[v];
    std::sort(order.begin() + 1, order.end());
    do self(self, v + 1);
    while (std::next_permutation(order.begin() + 1, order.end()));
  };
  rec(rec, 0);
  return out;
}

std::size_t count_up_to_isomorphism(const std::vector<RibbonGraph>& maps) {
  std::vector<const RibbonGraph*> reps;
  for (const auto& m : maps) {
    bool fresh = std::none_of(reps.begin(), reps.end(), [&](const RibbonGraph* r) { return find_isomorphism(*r, m).has_value(); });
    if (fresh) reps.push_back(&m);
  }
  return reps.size();
}

}  // namespace

TEST_CASE("fixture genera", "[ribbon]") {
  CHECK(euler_genus(complete_graph_k4(true)) == 0);
  CHECK(euler_genus(complete_graph_k4(false)) == 1);
  CHECK(euler_genus(toroidal_triple_edge()) == 1);
  CHECK(euler_genus(multi_edge_graph(3)) == 0);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(is_plane(cycle_graph(k)));
}

TEST_CASE("genus matches independent face tracing", "[ribbon]") {
  for (const auto& rg : enumerate_ribbon_graphs(5, false)) REQUIRE(euler_genus(rg) == genus_by_orbits(rg));
}

TEST_CASE("ribbon enumeration matches rotation systems up to isomorphism", "[ribbon][enumerate]") {
  auto maps = enumerate_ribbon_graphs(4, false);
  auto graphs = enumerate_multigraphs(4);
  for (std::size_t m = 1; m <= 4; ++m) {
    std::size_t want = 0, want_plane = 0;
    for (const auto& g : graphs) {
      if (g.edge_count() != m) continue;
      auto systems = all_rotation_systems(g);
      want += count_up_to_isomorphism(systems);
      std::vector<RibbonGraph> plane;
      for (auto& s : systems)
        if (genus_by_orbits(s) == 0) plane.push_back(s);
      want_plane += count_up_to_isomorphism(plane);
    }
    auto have = std::count_if(maps.begin(), maps.end(), [&](const RibbonGraph& r) { return r.graph().edge_count() == m; });
    auto have_plane = std::count_if(maps.begin(), maps.end(),
                                    [&](const RibbonGraph& r) { return r.graph().edge_count() == m && is_plane(r); });
    CHECK(static_cast<std::size_t>(have) == want);
    CHECK(static_cast<std::size_t>(have_plane) == want_plane);
  }
  CHECK(enumerate_plane_graphs(4).size() ==
        static_cast<std::size_t>(std::count_if(maps.begin(), maps.end(), [](const RibbonGraph& r) { return is_plane(r); })));
}

TEST_CASE("minors of plane ribbon graphs stay plane", "[ribbon]") {
  for (const auto& rg : enumerate_plane_graphs(5))
    for (std::size_t e = 0; e < rg.graph().edge_count(); ++e) {
      auto d = ribbon_delete(rg, e);
      if (is_connected(d.graph())) REQUIRE(is_plane(d));
      if (rg.graph().vertex_count() > 2) REQUIRE(is_plane(ribbon_contract(rg, e)));
    }
}

TEST_CASE("reversal is an involution that keeps the genus", "[ribbon]") {
  for (const auto& rg : enumerate_ribbon_graphs(4, false)) {
    REQUIRE(reverse(reverse(rg)) == rg);
    REQUIRE(euler_genus(reverse(rg)) == euler_genus(rg));
  }
}

TEST_CASE("cycle sides split a triangle with a pendant inside and outside", "[ribbon]") {
  // triangle a b c counterclockwise, d inside joined to a, e outside joined to b
  Multigraph g({"a", "b", "c", "d", "e"},
               {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}, {"ad", "a", "d"}, {"be", "b", "e"}});
  RibbonGraph rg(g, Rotation{{"a", {"ab", "ad", "ca"}}, {"b", {"be", "bc", "ab"}}, {"c", {"ca", "bc"}}, {"d", {"ad"}}, {"e", {"be"}}});
  REQUIRE(is_plane(rg));
  std::vector<Dart> ccw{{g.edge("ab"), g.vertex("a")}, {g.edge("bc"), g.vertex("b")}, {g.edge("ca"), g.vertex("c")}};
  auto sides = classify_sides(rg, ccw);
  CHECK(sides.left_edges == g.edge_set({"ad"}));
  CHECK(sides.right_edges == g.edge_set({"be"}));
}
