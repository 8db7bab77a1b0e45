#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "sandtorsor/enumerate.hpp"
#include "sandtorsor/moves.hpp"

using namespace sandtorsor;

namespace {

// Vertices on the tree path from a up to root, excluding a.
std::vector<std::size_t> path_above(const Multigraph& g, SpanningTree t, std::size_t root, std::size_t a) {
  std::vector<std::size_t> parent(g.vertex_count(), npos);
  std::vector<std::size_t> queue{root};
  parent[root] = root;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t e : t.elements()) {
      auto [x, y] = g.ends(e);
      if (x != queue[i] && y != queue[i]) continue;
      std::size_t w = x == queue[i] ? y : x;
      if (parent[w] != npos) continue;
      parent[w] = queue[i];
      queue.push_back(w);
    }
  std::vector<std::size_t> out;
  for (std::size_t v = a; v != root;) out.push_back(v = parent[v]);
  return out;
}

bool same_cycle(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a == b) return true;
    std::rotate(a.begin(), a.begin() + 1, a.end());
  }
  return a == b;
}

std::vector<RibbonGraph> two_connected_plane(std::size_t max_edges) {
  std::vector<RibbonGraph> out;
  for (auto& rg : enumerate_plane_graphs(max_edges))
    if (rg.graph().vertex_count() > 1 && is_two_connected(rg.graph())) out.push_back(rg);
  return out;
}

}  // namespace

TEST_CASE("tree order matches a path walk", "[moves]") {
  for (const auto& rg : enumerate_plane_graphs(5)) {
    const auto& g = rg.graph();
    for (SpanningTree t : spanning_trees(g))
      for (std::size_t root = 0; root < g.vertex_count(); ++root)
        for (std::size_t a = 0; a < g.vertex_count(); ++a) {
          auto above = path_above(g, t, root, a);
          for (std::size_t b = 0; b < g.vertex_count(); ++b)
            REQUIRE(precedes(g, t, root, a, b) == (std::find(above.begin(), above.end(), b) != above.end()));
        }
  }
}

TEST_CASE("pair classification agrees with one-turn simulation", "[moves]") {
  for (const auto& rg : enumerate_plane_graphs(5)) {
    const auto& g = rg.graph();
    for (SpanningTree t : spanning_trees(g))
      for (std::size_t c = 0; c < g.vertex_count(); ++c)
        for (std::size_t s = 0; s < g.vertex_count(); ++s) {
          auto pair = classify_pair(rg, t, c, s);
          auto sim = single_step_by_simulation(rg, t, c, s);
          REQUIRE(pair.has_value() == sim.has_value());
          if (!pair) continue;
          REQUIRE(pair->g == sim->first);
          REQUIRE(pair->f == sim->second);
          REQUIRE((pair->kind == MoveKind::source_turn) == is_leaf(g, t, c));
          REQUIRE(route_tree(rg, t, c, s) == pair->result());
        }
  }
}

TEST_CASE("reverse pairs undo a single step by routing one chip", "[moves]") {
  for (const auto& rg : enumerate_plane_graphs(5)) {
    const auto& g = rg.graph();
    for (SpanningTree t : spanning_trees(g))
      for (std::size_t x = 0; x < g.vertex_count(); ++x)
        for (std::size_t y = 0; y < g.vertex_count(); ++y) {
          auto back = classify_reverse_pair(rg, t, x, y);
          if (!back) continue;
          REQUIRE(route_tree(rg, t, back->chip(), back->sink()) == back->result());
          auto forward = classify_pair(rg, back->result(), back->c, back->s);
          REQUIRE(forward);
          REQUIRE(forward->result() == t);
        }
  }
}

TEST_CASE("source-turn paths connect every ordered tree pair", "[moves]") {
  for (const auto& rg : two_connected_plane(5)) {
    auto trees = spanning_trees(rg.graph());
    for (SpanningTree a : trees)
      for (SpanningTree b : trees) {
        auto seq = source_turn_path(rg, a, b);
        REQUIRE(replay_moves(rg, seq));
        for (const auto& m : seq.moves) REQUIRE(m.kind == MoveKind::source_turn);
      }
  }
}

TEST_CASE("leaf-swap paths connect every ordered tree pair", "[moves]") {
  for (const auto& rg : two_connected_plane(5)) {
    const auto& g = rg.graph();
    auto trees = spanning_trees(g);
    for (SpanningTree a : trees)
      for (SpanningTree b : trees) {
        auto path = leaf_swap_path(g, a, b);
        REQUIRE(path.front() == a);
        REQUIRE(path.back() == b);
        REQUIRE(is_leaf_swap_sequence(g, path));
      }
  }
  Multigraph path({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "c"}});
  CHECK_THROWS_AS(leaf_swap_path(path, path.all_edges(), path.all_edges()), InputError);
}

TEST_CASE("tele{5}(1,0,0,2,1,0) has the drawn rotations", "[moves][telescope][fixture]") {
  auto tele = telescope({5, {1, 0, 0, 2, 1, 0}});
  CHECK(tele.graph().vertex_count() == 11);
  CHECK(tele.graph().edge_count() == 20);
  CHECK(is_plane(tele));
  CHECK(is_two_connected(tele.graph()));
  auto rot = tele.rotation_ids();
  CHECK(same_cycle(rot.at("z0"), {"g", "h0_1", "e1", "eh1"}));
  CHECK(same_cycle(rot.at("z1"), {"eh1", "e1", "e2", "eh2"}));
  CHECK(same_cycle(rot.at("c"), {"g", "f", "hh4_1", "hh3_2", "hh3_1", "hh0_1"}));
  CHECK(same_cycle(rot.at("z5"), {"eh5", "e5", "f"}));
}

TEST_CASE("telescopes have tree complements for every single-step tree", "[moves][telescope]") {
  for (std::size_t n = 0; n <= 2; ++n) {
    std::vector<std::size_t> ks(n + 1, 0);
    for (;;) {
      auto tele = telescope({n, ks});
      auto eq = verify_telescope_equivalence(tele);
      REQUIRE(eq.criterion_mismatches.empty());
      REQUIRE(eq.telescope.has_value());
      REQUIRE(eq.complements_are_trees);
      REQUIRE(eq.single_step_trees > 0);
      std::size_t i = 0;
      while (i <= n && ++ks[i] == 3) ks[i++] = 0;
      if (i > n) break;
    }
  }
}

TEST_CASE("K4 is not a telescope and has a single-step tree without a tree complement", "[moves][telescope]") {
  auto k4 = complete_graph_k4(true);
  const auto& g = k4.graph();
  auto eq = verify_telescope_equivalence(k4, corner_at(k4, g.vertex("v0"), g.edge("a1")));
  CHECK(eq.criterion_mismatches.empty());
  CHECK_FALSE(eq.telescope.has_value());
  CHECK_FALSE(eq.complements_are_trees);
  CHECK(eq.holds());
}
