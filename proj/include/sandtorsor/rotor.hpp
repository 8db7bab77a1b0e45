#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ribbon.hpp"
#include "sandpile.hpp"

namespace sandtorsor {

/* Rotor edge per vertex; the sink holds npos. */
struct RotorConfiguration {
  std::size_t sink = npos;
  std::vector<std::size_t> rotor;
  friend bool operator==(const RotorConfiguration&, const RotorConfiguration&) = default;
};

/* Orient every tree edge toward s. */
inline RotorConfiguration tree_to_rotors(const Multigraph& g, SpanningTree t, std::size_t s) {
  if (!is_spanning_tree(g, t)) throw InputError("not a spanning tree");
  RotorConfiguration rho{s, std::vector<std::size_t>(g.vertex_count(), npos)};
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e : g.incident_edges(v)) {
      if (!t.contains(e)) continue;
      std::size_t w = g.other_end(e, v);
      if (seen[w]) continue;
      seen[w] = true;
      rho.rotor[w] = e;
      stack.push_back(w);
    }
  }
  return rho;
}

/* Rotor edge set if every rotor path reaches the sink, otherwise none. */
inline std::optional<SpanningTree> rotors_to_tree(const Multigraph& g, const RotorConfiguration& rho) {
  std::size_t n = g.vertex_count();
  // 0 = unvisited, 1 = on the current walk, 2 = reaches the sink
  std::vector<char> state(n, 0);
  state[rho.sink] = 2;
  SpanningTree t;
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::size_t> walk;
    std::size_t v = start;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = g.other_end(rho.rotor[v], v);
    }
    if (state[v] == 1) return std::nullopt;
    for (std::size_t w : walk) {
      state[w] = 2;
      t.insert(rho.rotor[w]);
    }
  }
  return t;
}

inline RotorConfiguration rotate_one(const RibbonGraph& rg, RotorConfiguration rho, std::size_t x) {
  if (x == rho.sink) throw InputError("the sink has no rotor");
  rho.rotor.at(x) = rg.next_edge(x, rho.rotor[x]);
  return rho;
}

struct RouteStep {
  std::size_t rotated_vertex;
  std::size_t new_rotor;
  std::size_t chip;
};

/* Steps and crossings of one run of single-chip routing; snapshots[k] is the configuration after k steps. */
struct RouteTrace {
  std::vector<RouteStep> steps;
  std::vector<Dart> crossings;
  std::vector<RotorConfiguration> snapshots;
};

enum class TraceMode { none, steps, snapshots };

struct RouteResult {
  SpanningTree tree;
  RouteTrace trace;
};

inline std::size_t route_step_bound(const Multigraph& g, Chips chips) {
  return 2 * g.edge_count() * (g.vertex_count() + static_cast<std::size_t>(chips)) + 1;
}

namespace detail {

inline void run_chip(const RibbonGraph& rg, RotorConfiguration& rho, std::size_t c, std::size_t bound,
                     RouteTrace* trace, bool snapshots) {
  const auto& g = rg.graph();
  std::size_t chip = c;
  std::size_t steps = 0;
  if (trace && snapshots) trace->snapshots.push_back(rho);
  while (chip != rho.sink) {
    if (++steps > bound) throw InvariantViolation("rotor-routing exceeded its step bound");
    std::size_t e = rg.next_edge(chip, rho.rotor[chip]);
    rho.rotor[chip] = e;
    std::size_t next = g.other_end(e, chip);
    if (trace) {
      trace->steps.push_back({chip, e, next});
      trace->crossings.push_back({e, chip});
      if (snapshots) trace->snapshots.push_back(rho);
    }
    chip = next;
  }
}

}  // namespace detail

/* Route a chip from c to the sink s starting from the tree t. */
inline RouteResult route_chip(const RibbonGraph& rg, SpanningTree t, std::size_t c, std::size_t s,
                              TraceMode mode = TraceMode::none) {
  const auto& g = rg.graph();
  if (c >= g.vertex_count() || s >= g.vertex_count()) throw InputError("unknown vertex in route_chip");
  RotorConfiguration rho = tree_to_rotors(g, t, s);
  RouteResult out;
  detail::run_chip(rg, rho, c, route_step_bound(g, 1), mode == TraceMode::none ? nullptr : &out.trace,
                   mode == TraceMode::snapshots);
  auto tree = rotors_to_tree(g, rho);
  if (!tree) throw InvariantViolation("rotor-routing ended with a cyclic configuration");
  out.tree = *tree;
  return out;
}

inline SpanningTree route_tree(const RibbonGraph& rg, SpanningTree t, std::size_t c, std::size_t s) {
  return route_chip(rg, t, c, s).tree;
}

/* Route D in Div0_s one chip at a time, vertices taken in `order` (default: ascending). */
inline SpanningTree route_divisor(const RibbonGraph& rg, SpanningTree t, const Divisor& d, std::size_t s,
                                  std::vector<std::size_t> order = {}) {
  const auto& g = rg.graph();
  if (d.size() != g.vertex_count() || !in_div0_sink(d, s)) throw InputError("divisor must lie in Div0 of the sink");
  if (order.empty())
    for (std::size_t v = 0; v < g.vertex_count(); ++v) order.push_back(v);
  RotorConfiguration rho = tree_to_rotors(g, t, s);
  std::size_t bound = route_step_bound(g, -d[s]);
  for (std::size_t v : order) {
    if (v == s) continue;
    for (Chips k = 0; k < d[v]; ++k) {
      detail::run_chip(rg, rho, v, bound, nullptr, false);
      if (!rotors_to_tree(g, rho)) throw InvariantViolation("rotor-routing ended with a cyclic configuration");
    }
  }
  return *rotors_to_tree(g, rho);
}

/* Sink-free rotor configuration with one directed cycle and the chip on it. */
struct Unicycle {
  std::vector<std::size_t> rotor;
  std::size_t chip = npos;
  friend bool operator==(const Unicycle&, const Unicycle&) = default;
  friend auto operator<=>(const Unicycle&, const Unicycle&) = default;
};

/* Directed cycles of a rotor configuration (sink-free when sink == npos), as dart lists. */
inline std::vector<std::vector<Dart>> rotor_cycles(const Multigraph& g, const std::vector<std::size_t>& rotor,
                                                   std::size_t sink = npos) {
  std::size_t n = g.vertex_count();
  std::vector<std::size_t> walk_id(n, npos);
  std::vector<std::vector<Dart>> out;
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t v = start;
    while (v != sink && walk_id[v] == npos) {
      walk_id[v] = start;
      v = g.other_end(rotor[v], v);
    }
    if (v == sink || walk_id[v] != start) continue;
    auto& cycle = out.emplace_back();
    std::size_t u = v;
    do {
      cycle.push_back({rotor[u], u});
      u = g.other_end(rotor[u], u);
    } while (u != v);
  }
  return out;
}

inline bool is_unicycle(const Multigraph& g, const Unicycle& u) {
  if (u.rotor.size() != g.vertex_count() || u.chip >= g.vertex_count()) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (u.rotor[v] >= g.edge_count() || !g.is_incident(u.rotor[v], v)) return false;
  auto cycles = rotor_cycles(g, u.rotor);
  if (cycles.size() != 1) return false;
  return std::any_of(cycles[0].begin(), cycles[0].end(), [&](Dart d) { return d.from == u.chip; });
}

inline std::vector<Dart> unicycle_cycle(const Multigraph& g, const Unicycle& u) {
  auto cycles = rotor_cycles(g, u.rotor);
  if (cycles.size() != 1) throw InvariantViolation("configuration is not a unicycle");
  return cycles[0];
}

/* Turn the rotor at the chip, then move the chip across it. */
inline Unicycle unicycle_step(const RibbonGraph& rg, Unicycle u, bool check = true) {
  std::size_t e = rg.next_edge(u.chip, u.rotor[u.chip]);
  u.rotor[u.chip] = e;
  u.chip = rg.graph().other_end(e, u.chip);
  if (check && !is_unicycle(rg.graph(), u)) throw InvariantViolation("rotor-routing process left the unicycles");
  return u;
}

/* The start followed by the unicycles after each of max_steps steps. */
inline std::vector<Unicycle> unicycle_orbit(const RibbonGraph& rg, const Unicycle& u, std::size_t max_steps) {
  if (!is_unicycle(rg.graph(), u)) throw InputError("not a unicycle");
  std::vector<Unicycle> out{u};
  for (std::size_t k = 0; k < max_steps; ++k) out.push_back(unicycle_step(rg, out.back()));
  return out;
}

/* The unicycle with the rotors of its cycle reversed and the same chip. */
inline Unicycle reversed_unicycle(const Multigraph& g, Unicycle u) {
  auto cycle = unicycle_cycle(g, u);
  auto rotor = u.rotor;
  for (Dart d : cycle) rotor[g.other_end(d.edge, d.from)] = d.edge;
  u.rotor = std::move(rotor);
  return u;
}

/* The tree oriented toward s, plus the rotor f at s. */
inline Unicycle tree_unicycle(const Multigraph& g, SpanningTree t, std::size_t s, std::size_t f, std::size_t c) {
  auto rho = tree_to_rotors(g, t, s);
  rho.rotor[s] = f;
  return {rho.rotor, c};
}

/* Every unicycle of the ribbon graph, in lexicographic order. */
inline std::vector<Unicycle> all_unicycles(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<Unicycle> out;
  if (g.edge_count() == 0) return out;
  std::vector<std::size_t> pick(n, 0);
  std::vector<std::size_t> rotor(n);
  for (;;) {
    for (std::size_t v = 0; v < n; ++v) rotor[v] = g.incident_edges(v)[pick[v]];
    auto cycles = rotor_cycles(g, rotor);
    if (cycles.size() == 1) {
      std::vector<std::size_t> on;
      for (Dart d : cycles[0]) on.push_back(d.from);
      std::sort(on.begin(), on.end());
      for (std::size_t x : on) out.push_back({rotor, x});
    }
    std::size_t v = 0;
    while (v < n && ++pick[v] == g.degree(v)) pick[v++] = 0;
    if (v == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sandtorsor
