#pragma once

#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "report.hpp"
#include "rotor.hpp"

namespace sandtorsor {

/* a precedes b when the tree path from a to root passes through b (strict). */
inline bool precedes(const Multigraph& g, SpanningTree t, std::size_t root, std::size_t a, std::size_t b) {
  if (a == b) return false;
  auto rho = tree_to_rotors(g, t, root);
  for (std::size_t v = a; v != root;) {
    v = g.other_end(rho.rotor[v], v);
    if (v == b) return true;
  }
  return false;
}

inline bool is_leaf(const Multigraph& g, SpanningTree t, std::size_t v) {
  std::size_t n = 0;
  for (std::size_t e : g.incident_edges(v)) n += t.contains(e);
  return n == 1;
}

enum class MoveKind { single_step, source_turn, reverse_single_step };

inline std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::single_step: return "single-step";
    case MoveKind::source_turn: return "source-turn";
    case MoveKind::reverse_single_step: return "reverse-single-step";
  }
  return "?";
}

/*
 * A pair (c - s, T), or (s - c, T) for reverse pairs, whose action swaps one
 * edge. For forward kinds g leaves and f enters; a reverse pair runs from f
 * to g, so f leaves and g enters.
 */
struct MovePair {
  MoveKind kind;
  std::size_t c = npos, s = npos;
  SpanningTree tree;
  std::size_t g = npos, f = npos;

  bool reverse() const { return kind == MoveKind::reverse_single_step; }
  std::size_t chip() const { return reverse() ? s : c; }
  std::size_t sink() const { return reverse() ? c : s; }
  SpanningTree result() const { return reverse() ? tree.without(f).with(g) : tree.without(g).with(f); }
};

/* Forward pair at c toward s, by the tree-order criterion on (g, f = next after g). */
inline std::optional<MovePair> classify_pair(const RibbonGraph& rg, SpanningTree t, std::size_t c, std::size_t s) {
  const auto& g = rg.graph();
  if (c == s) return std::nullopt;
  for (std::size_t ge : g.incident_edges(c)) {
    if (!t.contains(ge)) continue;
    std::size_t fe = rg.next_edge(c, ge);
    if (fe == ge || t.contains(fe) || g.other_end(fe, c) != s) continue;
    if (!precedes(g, t, s, c, g.other_end(ge, c))) continue;
    MoveKind kind = is_leaf(g, t, c) ? MoveKind::source_turn : MoveKind::single_step;
    return MovePair{kind, c, s, t, ge, fe};
  }
  return std::nullopt;
}

/* Single-step by running the chip: exactly one rotor turn, reported as (old rotor, new rotor). */
inline std::optional<std::pair<std::size_t, std::size_t>> single_step_by_simulation(const RibbonGraph& rg, SpanningTree t,
                                                                                     std::size_t c, std::size_t s) {
  if (c == s) return std::nullopt;
  auto run = route_chip(rg, t, c, s, TraceMode::steps);
  if (run.trace.steps.size() != 1) return std::nullopt;
  std::size_t g = tree_to_rotors(rg.graph(), t, s).rotor[c];
  std::size_t f = run.trace.steps[0].new_rotor;
  if (f == g) return std::nullopt;
  return std::make_pair(g, f);
}

/* (x - y, T) as a reverse single-step pair: y = c and x = s of the underlying forward pair. */
inline std::optional<MovePair> classify_reverse_pair(const RibbonGraph& rg, SpanningTree t, std::size_t x, std::size_t y) {
  const auto& g = rg.graph();
  if (x == y) return std::nullopt;
  for (std::size_t fe : g.edges_between(y, x)) {
    if (!t.contains(fe)) continue;
    std::size_t ge = rg.prev_edge(y, fe);
    if (ge == fe || t.contains(ge)) continue;
    SpanningTree swapped = t.without(fe).with(ge);
    if (!is_spanning_tree(g, swapped)) continue;
    auto forward = classify_pair(rg, swapped, y, x);
    if (forward && forward->g == ge && forward->f == fe) return MovePair{MoveKind::reverse_single_step, y, x, t, ge, fe};
  }
  return std::nullopt;
}

struct RotorTurn {
  std::size_t g, f;
};

/* Rotating c's rotor in T rooted at root keeps the configuration acyclic. */
inline std::optional<RotorTurn> rotatable(const RibbonGraph& rg, SpanningTree t, std::size_t root, std::size_t c) {
  if (c == root) throw InputError("the root has no rotor");
  auto rho = tree_to_rotors(rg.graph(), t, root);
  std::size_t ge = rho.rotor[c];
  auto turned = rotate_one(rg, rho, c);
  if (!rotors_to_tree(rg.graph(), turned)) return std::nullopt;
  return RotorTurn{ge, turned.rotor[c]};
}

inline std::optional<RotorTurn> source_rotatable(const RibbonGraph& rg, SpanningTree t, std::size_t root, std::size_t c) {
  if (!is_leaf(rg.graph(), t, c)) return std::nullopt;
  return rotatable(rg, t, root, c);
}

struct MoveSequence {
  SpanningTree start, goal;
  std::vector<MovePair> moves;
};

namespace detail {

template <class Neighbors>
std::optional<std::vector<std::pair<SpanningTree, MovePair>>> tree_bfs(SpanningTree start, SpanningTree goal,
                                                                        Neighbors&& neighbors) {
  std::unordered_map<EdgeSet, std::pair<SpanningTree, std::optional<MovePair>>, EdgeSetHash> parent;
  parent.emplace(start, std::make_pair(start, std::nullopt));
  std::deque<SpanningTree> queue{start};
  while (!queue.empty() && !parent.count(goal)) {
    SpanningTree t = queue.front();
    queue.pop_front();
    for (const MovePair& m : neighbors(t)) {
      SpanningTree next = m.result();
      if (parent.emplace(next, std::make_pair(t, std::optional<MovePair>(m))).second) queue.push_back(next);
    }
  }
  if (!parent.count(goal)) return std::nullopt;
  std::vector<std::pair<SpanningTree, MovePair>> path;
  for (SpanningTree t = goal; t != start;) {
    const auto& [prev, move] = parent.at(t);
    path.push_back({t, *move});
    t = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/* Source-turn moves available from t, excluding turns at root when one is given. */
inline std::vector<MovePair> source_turn_moves(const RibbonGraph& rg, SpanningTree t, std::size_t root = npos) {
  const auto& g = rg.graph();
  std::vector<MovePair> out;
  for (std::size_t c = 0; c < g.vertex_count(); ++c) {
    if (c == root || !is_leaf(g, t, c)) continue;
    std::size_t ge = npos;
    for (std::size_t e : g.incident_edges(c))
      if (t.contains(e)) ge = e;
    std::size_t fe = rg.next_edge(c, ge);
    if (fe == ge) continue;
    out.push_back({MoveKind::source_turn, c, g.other_end(fe, c), t, ge, fe});
  }
  return out;
}

/* Shortest source-turn sequence, or none; no connectivity precondition. */
inline std::optional<MoveSequence> find_source_turn_path(const RibbonGraph& rg, SpanningTree start, SpanningTree goal,
                                                         std::size_t root = npos) {
  auto path = detail::tree_bfs(start, goal, [&](SpanningTree t) { return source_turn_moves(rg, t, root); });
  if (!path) return std::nullopt;
  MoveSequence seq{start, goal, {}};
  for (auto& [t, m] : *path) seq.moves.push_back(m);
  return seq;
}

inline MoveSequence source_turn_path(const RibbonGraph& rg, SpanningTree start, SpanningTree goal) {
  const auto& g = rg.graph();
  if (!is_two_connected(g)) throw InputError("source-turn paths need a 2-connected graph");
  if (!is_spanning_tree(g, start) || !is_spanning_tree(g, goal)) throw InputError("endpoints must be spanning trees");
  auto seq = find_source_turn_path(rg, start, goal);
  if (!seq) throw InvariantViolation("no source-turn path from " + to_string(g, start) + " to " + to_string(g, goal));
  return *seq;
}

/* Replay a sequence with the chip-routing simulation; true iff every move does what it claims and the goal is reached. */
inline bool replay_moves(const RibbonGraph& rg, const MoveSequence& seq) {
  SpanningTree t = seq.start;
  for (const auto& m : seq.moves) {
    if (m.tree != t) return false;
    SpanningTree next = route_tree(rg, t, m.chip(), m.sink());
    if (next != m.result()) return false;
    t = next;
  }
  return t == seq.goal;
}

/* Trees where each step drops a leaf edge of the previous tree and adds one edge. */
inline std::vector<SpanningTree> leaf_swap_path(const Multigraph& g, SpanningTree start, SpanningTree goal) {
  if (!is_two_connected(g)) throw InputError("leaf-swap paths need a 2-connected graph");
  if (!is_spanning_tree(g, start) || !is_spanning_tree(g, goal)) throw InputError("endpoints must be spanning trees");
  auto neighbors = [&](SpanningTree t) {
    std::vector<MovePair> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (!is_leaf(g, t, v)) continue;
      std::size_t leaf_edge = npos;
      for (std::size_t e : g.incident_edges(v))
        if (t.contains(e)) leaf_edge = e;
      for (std::size_t e : g.incident_edges(v))
        if (!t.contains(e)) out.push_back({MoveKind::single_step, v, g.other_end(e, v), t, leaf_edge, e});
    }
    return out;
  };
  auto path = detail::tree_bfs(start, goal, neighbors);
  if (!path) throw InvariantViolation("no leaf-swap path from " + to_string(g, start) + " to " + to_string(g, goal));
  std::vector<SpanningTree> out{start};
  for (auto& [t, m] : *path) out.push_back(t);
  return out;
}

inline bool is_leaf_swap_sequence(const Multigraph& g, const std::vector<SpanningTree>& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!is_spanning_tree(g, seq[i])) return false;
    if (i == 0) continue;
    EdgeSet gone = seq[i - 1] - seq[i], came = seq[i] - seq[i - 1];
    if (gone.size() != 1 || came.size() != 1) return false;
    auto [a, b] = g.ends(gone.elements()[0]);
    if (!is_leaf(g, seq[i - 1], a) && !is_leaf(g, seq[i - 1], b)) return false;
  }
  return true;
}

// ---- telescope graphs ----

struct TelescopeSpec {
  std::size_t n = 0;
  std::vector<std::size_t> ks{0};
};

/* Designated vertices and edges around the special corner at c: f follows g at c, g joins c and x, f joins c and s. */
struct CornerLabels {
  std::size_t c = npos, s = npos, x = npos, g = npos, f = npos;
};

inline CornerLabels corner_at(const RibbonGraph& rg, std::size_t c, std::size_t g) {
  const auto& gr = rg.graph();
  if (!gr.is_incident(g, c)) throw InputError("edge " + gr.edge_id(g) + " is not at " + gr.vertex_id(c));
  std::size_t f = rg.next_edge(c, g);
  if (f == g) throw InputError("corner needs two distinct edges at c");
  return {c, gr.other_end(f, c), gr.other_end(g, c), g, f};
}

namespace detail {
inline std::string zname(std::size_t i) { return "z" + std::to_string(i); }
inline std::string wname(std::size_t i, std::size_t j) { return "w" + std::to_string(i) + "_" + std::to_string(j); }
}  // namespace detail

/*
 * tele{n}(k_0..k_n): c joined to z_0 by g and to z_n by f, doubled edges
 * e_i / eh_i between z_{i-1} and z_i, and k_i paths c - w_i^j - z_i with
 * edges hh_i^j (at c) and h_i^j (at z_i).
 */
inline RibbonGraph telescope(const TelescopeSpec& spec) {
  if (spec.ks.size() != spec.n + 1) throw InputError("telescope needs n + 1 multiplicities");
  std::size_t n = spec.n;
  auto e = [](std::size_t i) { return "e" + std::to_string(i); };
  auto eh = [](std::size_t i) { return "eh" + std::to_string(i); };
  auto h = [](std::size_t i, std::size_t j) { return "h" + std::to_string(i) + "_" + std::to_string(j); };
  auto hh = [](std::size_t i, std::size_t j) { return "hh" + std::to_string(i) + "_" + std::to_string(j); };
  using detail::wname;
  using detail::zname;

  std::vector<std::string> vs{"c"};
  std::vector<EdgeSpec> es{{"g", "c", zname(0)}, {"f", "c", zname(n)}};
  for (std::size_t i = 0; i <= n; ++i) vs.push_back(zname(i));
  for (std::size_t i = 1; i <= n; ++i) {
    es.push_back({e(i), zname(i - 1), zname(i)});
    es.push_back({eh(i), zname(i - 1), zname(i)});
  }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 1; j <= spec.ks[i]; ++j) {
      vs.push_back(wname(i, j));
      es.push_back({h(i, j), zname(i), wname(i, j)});
      es.push_back({hh(i, j), "c", wname(i, j)});
    }

  Rotation rot;
  auto& at_c = rot["c"];
  at_c = {"g", "f"};
  for (std::size_t i = n + 1; i-- > 0;)
    for (std::size_t j = spec.ks[i]; j >= 1; --j) at_c.push_back(hh(i, j));
  for (std::size_t i = 0; i <= n; ++i) {
    auto& at = rot[zname(i)];
    if (i == 0) at.push_back("g");
    else {
      at.push_back(eh(i));
      at.push_back(e(i));
    }
    for (std::size_t j = 1; j <= spec.ks[i]; ++j) at.push_back(h(i, j));
    if (i == n) at.push_back("f");
    else {
      at.push_back(e(i + 1));
      at.push_back(eh(i + 1));
    }
    for (std::size_t j = 1; j <= spec.ks[i]; ++j) rot[wname(i, j)] = {h(i, j), hh(i, j)};
  }
  return RibbonGraph(Multigraph(vs, es), rot);
}

inline CornerLabels telescope_corner(const RibbonGraph& tele) {
  const auto& g = tele.graph();
  return corner_at(tele, g.vertex("c"), g.edge("g"));
}

/* Every spec whose telescope has m edges. */
inline std::vector<TelescopeSpec> telescope_specs_with_edges(std::size_t m) {
  std::vector<TelescopeSpec> out;
  if (m < 2 || m % 2) return out;
  std::size_t pairs = m / 2 - 1;
  for (std::size_t n = 0; n <= pairs; ++n) {
    std::size_t rest = pairs - n;
    std::vector<std::size_t> ks(n + 1, 0);
    auto fill = [&](auto&& self, std::size_t i, std::size_t left) -> void {
      if (i == n) {
        ks[n] = left;
        out.push_back({n, ks});
        return;
      }
      for (std::size_t k = 0; k <= left; ++k) {
        ks[i] = k;
        self(self, i + 1, left - k);
      }
    };
    fill(fill, 0, rest);
  }
  return out;
}

/* Single-step tree by the structural criterion: exactly one of f, g and an x-s tree path avoiding c. */
inline bool is_single_step_tree(const RibbonGraph& rg, SpanningTree t, const CornerLabels& k) {
  if (t.contains(k.f) == t.contains(k.g)) return false;
  if (k.x == k.s) return true;
  const auto& g = rg.graph();
  auto rho = tree_to_rotors(g, t, k.s);
  for (std::size_t v = k.x; v != k.s; v = g.other_end(rho.rotor[v], v))
    if (v == k.c) return false;
  return true;
}

/* Single-step tree by the pair definitions, for cross-checking the criterion. */
inline bool is_single_step_tree_by_pairs(const RibbonGraph& rg, SpanningTree t, const CornerLabels& k) {
  auto forward = classify_pair(rg, t, k.c, k.s);
  if (forward && forward->g == k.g && forward->f == k.f) return true;
  auto back = classify_reverse_pair(rg, t, k.s, k.c);
  return back && back->g == k.g && back->f == k.f;
}

struct TelescopeEquivalence {
  bool complements_are_trees = true;
  std::optional<TelescopeSpec> telescope;
  std::size_t single_step_trees = 0;
  std::vector<std::string> criterion_mismatches;
  bool holds() const { return complements_are_trees == telescope.has_value(); }
};

/*
 * The biconditional at one corner: every single-step tree has a spanning
 * tree complement exactly when the graph is a telescope with its g, f at
 * this corner.
 */
inline TelescopeEquivalence verify_telescope_equivalence(const RibbonGraph& rg, const CornerLabels& k) {
  const auto& g = rg.graph();
  TelescopeEquivalence out;
  for (SpanningTree t : spanning_trees(g)) {
    bool criterion = is_single_step_tree(rg, t, k);
    if (criterion != is_single_step_tree_by_pairs(rg, t, k)) out.criterion_mismatches.push_back(to_string(g, t));
    if (!criterion) continue;
    ++out.single_step_trees;
    if (!is_spanning_tree(g, g.all_edges() - t)) out.complements_are_trees = false;
  }
  for (const auto& spec : telescope_specs_with_edges(g.edge_count())) {
    RibbonGraph tele = telescope(spec);
    if (tele.graph().vertex_count() != g.vertex_count()) continue;
    auto tk = telescope_corner(tele);
    if (find_isomorphism_anchored(tele, rg, Dart{tk.g, tk.c}, Dart{k.g, k.c})) {
      out.telescope = spec;
      break;
    }
  }
  return out;
}

inline TelescopeEquivalence verify_telescope_equivalence(const RibbonGraph& rg) {
  return verify_telescope_equivalence(rg, telescope_corner(rg));
}

}  // namespace sandtorsor
