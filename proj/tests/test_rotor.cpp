#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "sandtorsor/enumerate.hpp"
#include "sandtorsor/rotor_checks.hpp"
#include "sandtorsor/torsor.hpp"

using namespace sandtorsor;

namespace {

RibbonGraph k4_minus_edge() {
  Multigraph g({"a", "b", "c", "s"}, {{"sa", "s", "a"}, {"e2", "a", "b"}, {"ac", "a", "c"}, {"e1", "b", "c"}, {"cs", "c", "s"}});
  return RibbonGraph(g, Rotation{{"a", {"e2", "ac", "sa"}}, {"b", {"e1", "e2"}}, {"c", {"cs", "ac", "e1"}}, {"s", {"cs", "sa"}}});
}

RibbonGraph contraction_counterexample() {
  Multigraph g({"a", "c", "p", "q", "s"},
               {{"ac", "a", "c"}, {"cp", "c", "p"}, {"e", "p", "s"}, {"sq", "s", "q"}, {"qa", "q", "a"}, {"cq", "c", "q"}});
  return RibbonGraph(g, Rotation{{"a", {"ac", "qa"}},
                                 {"c", {"ac", "cq", "cp"}},
                                 {"p", {"cp", "e"}},
                                 {"q", {"sq", "cq", "qa"}},
                                 {"s", {"e", "sq"}}});
}

// Plain rotor walk on the raw rotation lists: rotors point to parents, the chip turns and moves until it hits s.
std::vector<std::string> walk(const RibbonGraph& rg, const std::vector<std::string>& tree, const std::string& from,
                              const std::string& sink) {
  const auto& g = rg.graph();
  std::map<std::string, std::string> rotor;
  std::vector<std::string> frontier{sink};
  std::set<std::string> done{sink};
  while (!frontier.empty()) {
    std::string v = frontier.back();
    frontier.pop_back();
    for (const auto& e : tree) {
      auto [x, y] = g.ends(g.edge(e));
      std::string a = g.vertex_id(x), b = g.vertex_id(y);
      std::string w = a == v ? b : (b == v ? a : "");
      if (w.empty() || done.count(w)) continue;
      rotor[w] = e;
      done.insert(w);
      frontier.push_back(w);
    }
  }
  std::string chip = from;
  while (chip != sink) {
    auto order = rg.rotation_ids().at(chip);
    auto it = std::find(order.begin(), order.end(), rotor[chip]);
    std::string e = order[(static_cast<std::size_t>(it - order.begin()) + 1) % order.size()];
    rotor[chip] = e;
    auto [x, y] = g.ends(g.edge(e));
    chip = g.vertex_id(x) == chip ? g.vertex_id(y) : g.vertex_id(x);
  }
  std::vector<std::string> out;
  for (const auto& [v, e] : rotor) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("routing c to s on K4 minus an edge takes two rotor turns", "[rotor][fixture]") {
  auto rg = k4_minus_edge();
  const auto& g = rg.graph();
  auto run = route_chip(rg, g.edge_set({"ac", "e1", "cs"}), g.vertex("c"), g.vertex("s"), TraceMode::steps);
  REQUIRE(run.trace.steps.size() == 2);
  CHECK(g.vertex_id(run.trace.steps[0].rotated_vertex) == "c");
  CHECK(g.edge_id(run.trace.steps[0].new_rotor) == "ac");
  CHECK(g.vertex_id(run.trace.steps[0].chip) == "a");
  CHECK(g.vertex_id(run.trace.steps[1].rotated_vertex) == "a");
  CHECK(g.edge_id(run.trace.steps[1].new_rotor) == "sa");
  CHECK(g.vertex_id(run.trace.steps[1].chip) == "s");
  CHECK(run.tree == g.edge_set({"sa", "e1", "ac"}));
}

TEST_CASE("contracting e1 and deleting e2 commute with routing", "[rotor][fixture]") {
  auto rg = k4_minus_edge();
  const auto& g = rg.graph();
  SpanningTree t = g.edge_set({"ac", "e1", "cs"});
  std::size_t c = g.vertex("c"), s = g.vertex("s");

  auto contracted = ribbon_contract(rg, "e1");
  const auto& cg = contracted.graph();
  SpanningTree routed = route_tree(contracted, translate_edges(g, t.without(g.edge("e1")), cg),
                                   cg.vertex(contracted_vertex_id(g, g.edge("e1"), c)), cg.vertex("s"));
  CHECK(routed == cg.edge_set({"sa", "ac"}));

  auto deleted = ribbon_delete(rg, "e2");
  const auto& dg = deleted.graph();
  CHECK(route_tree(deleted, translate_edges(g, t, dg), dg.vertex("c"), dg.vertex("s")) == dg.edge_set({"sa", "e1", "ac"}));
  CHECK(route_tree(rg, t, c, s) == g.edge_set({"sa", "e1", "ac"}));
}

TEST_CASE("a non-adjacent chip and sink break contraction consistency", "[rotor][fixture]") {
  auto rg = contraction_counterexample();
  const auto& g = rg.graph();
  REQUIRE(is_plane(rg));
  SpanningTree t = g.edge_set({"ac", "e", "sq", "cq"});
  SpanningTree image = route_tree(rg, t, g.vertex("c"), g.vertex("s"));
  CHECK(image == g.edge_set({"ac", "cp", "e", "qa"}));

  auto minor = ribbon_contract(rg, "e");
  const auto& mg = minor.graph();
  std::size_t ms = mg.vertex(contracted_vertex_id(g, g.edge("e"), g.vertex("s")));
  SpanningTree got = route_tree(minor, translate_edges(g, t.without(g.edge("e")), mg), mg.vertex("c"), ms);
  CHECK(got == mg.edge_set({"ac", "cp", "sq"}));
  CHECK(got != translate_edges(g, image.without(g.edge("e")), mg));

  auto report = verify_consistency(Variant::r, rg, {.nonadjacent_pairs = true});
  CHECK(report.tally("contraction").violations > 0);
  CHECK(verify_consistency(Variant::r, rg).clean());
}

TEST_CASE("routing agrees with a plain rotor walk", "[rotor]") {
  for (const auto& rg : enumerate_plane_graphs(5)) {
    const auto& g = rg.graph();
    for (SpanningTree t : spanning_trees(g))
      for (std::size_t c = 0; c < g.vertex_count(); ++c)
        for (std::size_t s = 0; s < g.vertex_count(); ++s) {
          if (c == s) continue;
          auto want = walk(rg, g.edge_names(t), g.vertex_id(c), g.vertex_id(s));
          auto got = g.edge_names(route_tree(rg, t, c, s));
          std::sort(got.begin(), got.end());
          REQUIRE(got == want);
        }
  }
}

TEST_CASE("tree and rotor conversions round trip", "[rotor]") {
  for (const auto& rg : enumerate_plane_graphs(5)) {
    const auto& g = rg.graph();
    for (SpanningTree t : spanning_trees(g))
      for (std::size_t s = 0; s < g.vertex_count(); ++s) {
        auto rho = tree_to_rotors(g, t, s);
        REQUIRE(rho.rotor[s] == npos);
        REQUIRE(rotors_to_tree(g, rho) == t);
      }
  }
}

TEST_CASE("routing a divisor does not depend on the chip order", "[rotor]") {
  std::mt19937_64 rng(5);
  for (const auto& rg : enumerate_plane_graphs(5)) {
    const auto& g = rg.graph();
    std::size_t n = g.vertex_count();
    std::size_t s = 0;
    Divisor d(n);
    for (std::size_t v = 1; v < n; ++v) d[v] = static_cast<Chips>(rng() % 3);
    d[s] = -d.degree();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (SpanningTree t : spanning_trees(g)) {
      SpanningTree base = route_divisor(rg, t, d, s);
      for (int k = 0; k < 3; ++k) {
        std::shuffle(order.begin(), order.end(), rng);
        REQUIRE(route_divisor(rg, t, d, s, order) == base);
      }
    }
  }
}

TEST_CASE("traced runs satisfy the rotor lemmas", "[rotor]") {
  for (const auto& rg : enumerate_plane_graphs(5)) {
    const auto& g = rg.graph();
    for (SpanningTree t : spanning_trees(g))
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.ends(e);
        for (auto [c, s] : {std::pair{a, b}, std::pair{b, a}}) REQUIRE(check_cycle_reversal(rg, t, c, s).violations.empty());
      }
  }
}

TEST_CASE("full spins have period 2|E| and cross each dart once", "[rotor][unicycle]") {
  for (const auto& rg : enumerate_ribbon_graphs(5, false)) {
    bool plane = is_plane(rg);
    bool all_reverse = true;
    for (const auto& u : all_unicycles(rg.graph())) {
      auto spin = full_spin(rg, u);
      REQUIRE(spin.first_return == 2 * rg.graph().edge_count());
      REQUIRE(spin.darts_once);
      REQUIRE(spin.full_turns);
      if (!steps_to_reversal(rg, u)) all_reverse = false;
    }
    REQUIRE(all_reverse == plane);
  }
}

TEST_CASE("cycle reversal separates the plane and toroidal triple edge and K4", "[rotor][unicycle]") {
  auto reverses_all = [](const RibbonGraph& rg) {
    auto us = all_unicycles(rg.graph());
    return std::all_of(us.begin(), us.end(), [&](const Unicycle& u) { return steps_to_reversal(rg, u).has_value(); });
  };
  CHECK(reverses_all(multi_edge_graph(3)));
  CHECK_FALSE(reverses_all(toroidal_triple_edge()));
  CHECK(reverses_all(complete_graph_k4(true)));
  CHECK_FALSE(reverses_all(complete_graph_k4(false)));
}
