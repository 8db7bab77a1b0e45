#pragma once

#include <set>
#include <string>
#include <vector>

#include "rotor.hpp"

namespace sandtorsor {

struct UnicycleSpin {
  std::size_t first_return = 0;
  bool darts_once = true;
  bool full_turns = true;
};

/* Run 2|E| steps of the process and record how the orbit closes. */
inline UnicycleSpin full_spin(const RibbonGraph& rg, const Unicycle& start) {
  const auto& g = rg.graph();
  std::size_t m = g.edge_count();
  std::vector<std::size_t> dart_hits(2 * m, 0), turns(g.vertex_count(), 0);
  UnicycleSpin out;
  Unicycle u = start;
  for (std::size_t k = 1; k <= 2 * m; ++k) {
    std::size_t from = u.chip;
    ++turns[from];
    u = unicycle_step(rg, u, false);
    ++dart_hits[rg.dart_index({u.rotor[from], from})];
    if (out.first_return == 0 && u == start) out.first_return = k;
  }
  for (std::size_t h : dart_hits)
    if (h != 1) out.darts_once = false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (turns[v] != g.degree(v)) out.full_turns = false;
  return out;
}

/* Steps until the unicycle with its cycle reversed appears, if within one period. */
inline std::optional<std::size_t> steps_to_reversal(const RibbonGraph& rg, const Unicycle& start) {
  Unicycle target = reversed_unicycle(rg.graph(), start);
  Unicycle u = start;
  for (std::size_t k = 0; k <= 2 * rg.graph().edge_count(); ++k) {
    if (u == target) return k;
    u = unicycle_step(rg, u, false);
  }
  return std::nullopt;
}

/*
 * On a plane graph, the run from a unicycle to its reversal must cross every
 * edge left of the cycle in both directions and no edge on its right.
 */
inline std::vector<std::string> side_crossing_violations(const RibbonGraph& rg, const Unicycle& start) {
  const auto& g = rg.graph();
  std::vector<std::string> out;
  auto cycle = unicycle_cycle(g, start);
  if (cycle.size() < 2 || cycle[0].edge == cycle[1].edge) return out;
  auto sides = classify_sides(rg, cycle);
  auto steps = steps_to_reversal(rg, start);
  if (!steps) {
    out.push_back("cycle never reversed");
    return out;
  }
  std::vector<bool> crossed(2 * g.edge_count(), false);
  Unicycle u = start;
  for (std::size_t k = 0; k < *steps; ++k) {
    std::size_t from = u.chip;
    u = unicycle_step(rg, u, false);
    crossed[rg.dart_index({u.rotor[from], from})] = true;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    bool any = crossed[2 * e] || crossed[2 * e + 1];
    bool both = crossed[2 * e] && crossed[2 * e + 1];
    if (sides.right_edges.contains(e) && any) out.push_back("crossed right edge " + g.edge_id(e));
    if (sides.left_edges.contains(e) && !both) out.push_back("left edge " + g.edge_id(e) + " not crossed both ways");
  }
  return out;
}

struct CycleReversalReport {
  std::size_t steps = 0;
  std::size_t cycles_seen = 0;
  bool right_side_checked = false;
  bool left_side_checked = false;
  std::vector<std::string> violations;
};

/*
 * Traced single-chip routing from c to an adjacent sink s on a plane graph:
 * no overspins, every rotor cycle later reversed, the chip stays off the
 * right of the cycle closed by a non-tree edge c-s, and the matching
 * unicycle sweeps its left side.
 */
inline CycleReversalReport check_cycle_reversal(const RibbonGraph& rg, SpanningTree t, std::size_t c, std::size_t s) {
  const auto& g = rg.graph();
  auto joining = g.edges_between(c, s);
  if (joining.empty()) throw InputError("chip and sink must be adjacent");
  CycleReversalReport report;
  auto run = route_chip(rg, t, c, s, TraceMode::snapshots);
  const auto& trace = run.trace;
  report.steps = trace.steps.size();

  std::set<std::size_t> darts;
  std::vector<std::size_t> turns(g.vertex_count(), 0);
  for (Dart d : trace.crossings) {
    if (!darts.insert(rg.dart_index(d)).second)
      report.violations.push_back("dart " + g.edge_id(d.edge) + " from " + g.vertex_id(d.from) + " crossed twice");
    if (++turns[d.from] > g.degree(d.from))
      report.violations.push_back("rotor at " + g.vertex_id(d.from) + " passed a full turn");
  }

  for (std::size_t i = 0; i < trace.snapshots.size(); ++i) {
    for (const auto& cycle : rotor_cycles(g, trace.snapshots[i].rotor, s)) {
      ++report.cycles_seen;
      bool reversed = false;
      for (const auto& later : trace.snapshots) {
        bool all = true;
        for (Dart d : cycle) all = all && later.rotor[rg.head(d)] == d.edge;
        if (all) {
          reversed = true;
          break;
        }
      }
      if (!reversed) report.violations.push_back("cycle in configuration " + std::to_string(i) + " never reversed");
    }
  }

  auto rho = tree_to_rotors(g, t, s);
  for (std::size_t f : joining) {
    if (t.contains(f)) continue;
    std::vector<Dart> cycle;
    for (std::size_t v = c; v != s; v = g.other_end(rho.rotor[v], v)) cycle.push_back({rho.rotor[v], v});
    cycle.push_back({f, s});
    auto sides = classify_sides(rg, cycle);
    report.right_side_checked = true;
    for (Dart d : trace.crossings)
      if (sides.right_edges.contains(d.edge))
        report.violations.push_back("chip crossed " + g.edge_id(d.edge) + " right of the cycle through " + g.edge_id(f));
    report.left_side_checked = true;
    for (auto& v : side_crossing_violations(rg, tree_unicycle(g, t, s, f, c)))
      report.violations.push_back("unicycle through " + g.edge_id(f) + ": " + v);
  }
  return report;
}

}  // namespace sandtorsor
