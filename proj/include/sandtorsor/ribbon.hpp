#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multigraph.hpp"

namespace sandtorsor {

/* An edge traversed away from `from`. */
struct Dart {
  std::size_t edge = npos;
  std::size_t from = npos;
  friend bool operator==(const Dart&, const Dart&) = default;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

using Rotation = std::map<std::string, std::vector<std::string>>;

/* Multigraph with a counterclockwise cyclic order of edges at every vertex. */
class RibbonGraph {
 public:
  RibbonGraph() = default;

  RibbonGraph(Multigraph g, std::vector<std::vector<std::size_t>> rotation) : graph_(std::move(g)) {
    if (rotation.size() != graph_.vertex_count()) throw InputError("rotation must list every vertex");
    slot_.assign(graph_.edge_count(), {npos, npos});
    for (std::size_t v = 0; v < rotation.size(); ++v) {
      auto& order = rotation[v];
      std::vector<std::size_t> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != graph_.incident_edges(v))
        throw InputError("rotation at '" + graph_.vertex_id(v) + "' must list each incident edge once");
      if (!order.empty()) std::rotate(order.begin(), std::min_element(order.begin(), order.end()), order.end());
      for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t e = order[i];
        (graph_.ends(e).first == v ? slot_[e][0] : slot_[e][1]) = i;
      }
    }
    rotation_ = std::move(rotation);
  }

  RibbonGraph(Multigraph g, const Rotation& rotation) : RibbonGraph(g, by_index(g, rotation)) {}

  const Multigraph& graph() const { return graph_; }
  const std::vector<std::size_t>& rotation(std::size_t v) const { return rotation_.at(v); }
  const std::vector<std::vector<std::size_t>>& rotations() const { return rotation_; }

  Rotation rotation_ids() const {
    Rotation out;
    for (std::size_t v = 0; v < graph_.vertex_count(); ++v) {
      auto& list = out[graph_.vertex_id(v)];
      for (std::size_t e : rotation_[v]) list.push_back(graph_.edge_id(e));
    }
    return out;
  }

  std::size_t position(std::size_t x, std::size_t e) const {
    auto [a, b] = graph_.ends(e);
    if (x == a) return slot_[e][0];
    if (x == b) return slot_[e][1];
    throw InputError("vertex '" + graph_.vertex_id(x) + "' is not an end of edge '" + graph_.edge_id(e) + "'");
  }
  /* The edge after e in the cyclic order at x. */
  std::size_t next_edge(std::size_t x, std::size_t e) const {
    const auto& order = rotation_[x];
    return order[(position(x, e) + 1) % order.size()];
  }
  std::size_t prev_edge(std::size_t x, std::size_t e) const {
    const auto& order = rotation_[x];
    return order[(position(x, e) + order.size() - 1) % order.size()];
  }

  std::size_t head(Dart d) const { return graph_.other_end(d.edge, d.from); }
  Dart reversed(Dart d) const { return {d.edge, head(d)}; }
  /* Successor of a dart along its face: leave the head along the next edge. */
  Dart face_next(Dart d) const {
    std::size_t w = head(d);
    return {next_edge(w, d.edge), w};
  }
  std::vector<Dart> darts() const {
    std::vector<Dart> out;
    for (std::size_t e = 0; e < graph_.edge_count(); ++e) {
      out.push_back({e, graph_.ends(e).first});
      out.push_back({e, graph_.ends(e).second});
    }
    return out;
  }
  std::size_t dart_index(Dart d) const { return 2 * d.edge + (d.from == graph_.ends(d.edge).first ? 0 : 1); }

  friend bool operator==(const RibbonGraph& x, const RibbonGraph& y) {
    return x.graph_ == y.graph_ && x.rotation_ == y.rotation_;
  }

 private:
  static std::vector<std::vector<std::size_t>> by_index(const Multigraph& g, const Rotation& rotation) {
    std::vector<std::vector<std::size_t>> out(g.vertex_count());
    for (const auto& [v, edges] : rotation) {
      auto& list = out[g.vertex(v)];
      for (const auto& e : edges) list.push_back(g.edge(e));
    }
    return out;
  }

  Multigraph graph_;
  std::vector<std::vector<std::size_t>> rotation_;
  std::vector<std::array<std::size_t, 2>> slot_;
};

/* Compact one-line description: edges with ends, then each rotation. */
inline std::string to_string(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  std::string out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    out += (e ? " " : "") + g.edge_id(e) + ":" + g.vertex_id(a) + "-" + g.vertex_id(b);
  }
  out += " |";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out += " " + g.vertex_id(v) + ":(";
    for (std::size_t i = 0; i < rg.rotation(v).size(); ++i) out += (i ? " " : "") + g.edge_id(rg.rotation(v)[i]);
    out += ")";
  }
  return out;
}

inline std::string to_string(const Multigraph& g, EdgeSet s) {
  std::string out = "{";
  for (std::size_t e : s.elements()) out += (out.size() > 1 ? "," : "") + g.edge_id(e);
  return out + "}";
}

inline std::vector<std::vector<Dart>> faces(const RibbonGraph& rg) {
  std::vector<std::vector<Dart>> out;
  std::vector<bool> seen(2 * rg.graph().edge_count(), false);
  for (Dart start : rg.darts()) {
    if (seen[rg.dart_index(start)]) continue;
    auto& face = out.emplace_back();
    for (Dart d = start; !seen[rg.dart_index(d)]; d = rg.face_next(d)) {
      seen[rg.dart_index(d)] = true;
      face.push_back(d);
    }
  }
  return out;
}

/* Face id of every dart, indexed by dart_index. */
inline std::vector<std::size_t> face_of_darts(const RibbonGraph& rg) {
  std::vector<std::size_t> out(2 * rg.graph().edge_count(), npos);
  auto fs = faces(rg);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (Dart d : fs[i]) out[rg.dart_index(d)] = i;
  return out;
}

inline int euler_genus(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  if (!is_connected(g)) throw InputError("genus requires a connected graph");
  long face_count = g.edge_count() == 0 ? 1 : static_cast<long>(faces(rg).size());
  long twice = 2 - static_cast<long>(g.vertex_count()) + static_cast<long>(g.edge_count()) - face_count;
  if (twice < 0 || twice % 2 != 0) throw InvariantViolation("face count inconsistent with an orientable surface");
  return static_cast<int>(twice / 2);
}

inline bool is_plane(const RibbonGraph& rg) { return euler_genus(rg) == 0; }

inline RibbonGraph ribbon_delete(const RibbonGraph& rg, std::size_t e) {
  const auto& g = rg.graph();
  Multigraph h = delete_edge(g, e);
  Rotation rot = rg.rotation_ids();
  for (auto& [v, list] : rot) std::erase(list, g.edge_id(e));
  return RibbonGraph(std::move(h), rot);
}

inline RibbonGraph ribbon_contract(const RibbonGraph& rg, std::size_t e) {
  const auto& g = rg.graph();
  auto [x, y] = g.ends(e);
  auto arc = [&](std::size_t v) {
    std::vector<std::string> out;
    const auto& order = rg.rotation(v);
    std::size_t start = rg.position(v, e);
    for (std::size_t i = 1; i < order.size(); ++i) {
      std::size_t f = order[(start + i) % order.size()];
      if (!g.parallel(e, f)) out.push_back(g.edge_id(f));
    }
    return out;
  };
  Rotation rot = rg.rotation_ids();
  auto merged = arc(x);
  auto tail = arc(y);
  merged.insert(merged.end(), tail.begin(), tail.end());
  rot.erase(g.vertex_id(y));
  rot[g.vertex_id(x)] = std::move(merged);
  for (auto& [v, list] : rot)
    std::erase_if(list, [&](const std::string& id) { return g.edge(id) == e || g.parallel(e, g.edge(id)); });
  return RibbonGraph(contract(g, e), rot);
}

inline RibbonGraph ribbon_delete(const RibbonGraph& rg, std::string_view e) { return ribbon_delete(rg, rg.graph().edge(e)); }
inline RibbonGraph ribbon_contract(const RibbonGraph& rg, std::string_view e) {
  return ribbon_contract(rg, rg.graph().edge(e));
}

inline RibbonGraph reverse(const RibbonGraph& rg) {
  auto rot = rg.rotations();
  for (auto& order : rot) std::reverse(order.begin(), order.end());
  return RibbonGraph(rg.graph(), std::move(rot));
}

/* Maps indices of the source graph to indices of the target graph. */
struct RibbonIsomorphism {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
};

inline bool is_isomorphism(const RibbonGraph& a, const RibbonGraph& b, const RibbonIsomorphism& phi) {
  const auto& ga = a.graph();
  const auto& gb = b.graph();
  if (ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count()) return false;
  if (phi.vertex_map.size() != ga.vertex_count() || phi.edge_map.size() != ga.edge_count()) return false;
  auto bijective = [](const std::vector<std::size_t>& m) {
    std::vector<bool> hit(m.size(), false);
    for (std::size_t x : m) {
      if (x >= m.size() || hit[x]) return false;
      hit[x] = true;
    }
    return true;
  };
  if (!bijective(phi.vertex_map) || !bijective(phi.edge_map)) return false;
  for (std::size_t e = 0; e < ga.edge_count(); ++e) {
    auto [x, y] = ga.ends(e);
    std::size_t fe = phi.edge_map[e];
    auto [p, q] = gb.ends(fe);
    std::size_t fx = phi.vertex_map[x], fy = phi.vertex_map[y];
    if (!((fx == p && fy == q) || (fx == q && fy == p))) return false;
    for (std::size_t v : {x, y})
      if (phi.edge_map[a.next_edge(v, e)] != b.next_edge(phi.vertex_map[v], fe)) return false;
  }
  return true;
}

inline bool is_automorphism(const RibbonGraph& rg, const RibbonIsomorphism& phi) { return is_isomorphism(rg, rg, phi); }

namespace detail {

/* Extends the dart assignment da -> db over the component of da; partial maps use npos. */
inline bool extend_from_dart(const RibbonGraph& a, const RibbonGraph& b, Dart da, Dart db, RibbonIsomorphism& phi,
                             std::vector<std::size_t>& vertex_back, std::vector<std::size_t>& edge_back) {
  const auto& ga = a.graph();
  const auto& gb = b.graph();
  std::vector<std::size_t> dart_map(2 * ga.edge_count(), npos);
  std::deque<std::pair<Dart, Dart>> queue{{da, db}};
  while (!queue.empty()) {
    auto [d, e] = queue.front();
    queue.pop_front();
    std::size_t di = a.dart_index(d);
    if (dart_map[di] != npos) {
      if (dart_map[di] != b.dart_index(e)) return false;
      continue;
    }
    if (ga.degree(d.from) != gb.degree(e.from)) return false;
    dart_map[di] = b.dart_index(e);
    auto bind = [](std::vector<std::size_t>& fwd, std::vector<std::size_t>& back, std::size_t x, std::size_t y) {
      if (fwd[x] == npos && back[y] == npos) {
        fwd[x] = y;
        back[y] = x;
        return true;
      }
      return fwd[x] == y && back[y] == x;
    };
    if (!bind(phi.vertex_map, vertex_back, d.from, e.from)) return false;
    if (!bind(phi.edge_map, edge_back, d.edge, e.edge)) return false;
    queue.push_back({a.reversed(d), b.reversed(e)});
    queue.push_back({Dart{a.next_edge(d.from, d.edge), d.from}, Dart{b.next_edge(e.from, e.edge), e.from}});
  }
  return true;
}

inline std::vector<std::vector<std::size_t>> vertex_components(const Multigraph& g) {
  DisjointSets ds(g.vertex_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) ds.unite(g.ends(e).first, g.ends(e).second);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) groups[ds.find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace detail

/* Isomorphism fixing the image of one dart, if any. */
inline std::optional<RibbonIsomorphism> find_isomorphism_anchored(const RibbonGraph& a, const RibbonGraph& b, Dart da,
                                                                  Dart db) {
  const auto& ga = a.graph();
  const auto& gb = b.graph();
  if (ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count()) return std::nullopt;
  if (!is_connected(ga) || !is_connected(gb)) return std::nullopt;
  RibbonIsomorphism phi{std::vector<std::size_t>(ga.vertex_count(), npos), std::vector<std::size_t>(ga.edge_count(), npos)};
  std::vector<std::size_t> vb(gb.vertex_count(), npos), eb(gb.edge_count(), npos);
  if (!detail::extend_from_dart(a, b, da, db, phi, vb, eb)) return std::nullopt;
  if (!is_isomorphism(a, b, phi)) return std::nullopt;
  return phi;
}

inline std::optional<RibbonIsomorphism> find_isomorphism(const RibbonGraph& a, const RibbonGraph& b) {
  const auto& ga = a.graph();
  const auto& gb = b.graph();
  if (ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count()) return std::nullopt;
  RibbonIsomorphism phi{std::vector<std::size_t>(ga.vertex_count(), npos), std::vector<std::size_t>(ga.edge_count(), npos)};
  std::vector<std::size_t> vb(gb.vertex_count(), npos), eb(gb.edge_count(), npos);
  auto comps_a = detail::vertex_components(ga);
  auto comps_b = detail::vertex_components(gb);
  if (comps_a.size() != comps_b.size()) return std::nullopt;
  std::vector<bool> used(comps_b.size(), false);
  for (const auto& ca : comps_a) {
    bool matched = false;
    for (std::size_t j = 0; j < comps_b.size() && !matched; ++j) {
      if (used[j] || comps_b[j].size() != ca.size()) continue;
      const auto& cb = comps_b[j];
      if (ga.degree(ca[0]) == 0) {
        if (gb.degree(cb[0]) != 0) continue;
        phi.vertex_map[ca[0]] = cb[0];
        vb[cb[0]] = ca[0];
        used[j] = matched = true;
        break;
      }
      Dart da{ga.incident_edges(ca[0]).front(), ca[0]};
      for (std::size_t v : cb) {
        for (std::size_t e : gb.incident_edges(v)) {
          auto trial = phi;
          auto trial_vb = vb, trial_eb = eb;
          if (detail::extend_from_dart(a, b, da, Dart{e, v}, trial, trial_vb, trial_eb)) {
            phi = std::move(trial);
            vb = std::move(trial_vb);
            eb = std::move(trial_eb);
            used[j] = matched = true;
            break;
          }
        }
        if (matched) break;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (!is_isomorphism(a, b, phi)) return std::nullopt;
  return phi;
}

/*
 * Canonical code of a connected ribbon graph: equal codes iff ribbon
 * isomorphic. Minimum over all start darts of a breadth-first relabeling.
 */
inline std::vector<int> canonical_code(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  std::vector<int> best;
  if (g.edge_count() == 0) return {static_cast<int>(g.vertex_count())};
  std::vector<int> vlabel(g.vertex_count()), elabel(g.edge_count());
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::vector<int> code;
  for (Dart start : rg.darts()) {
    std::fill(vlabel.begin(), vlabel.end(), -1);
    std::fill(elabel.begin(), elabel.end(), -1);
    order.clear();
    code.clear();
    int next_v = 0, next_e = 0;
    vlabel[start.from] = next_v++;
    order.push_back({start.from, start.edge});
    bool worse = false;
    for (std::size_t i = 0; i < order.size() && !worse; ++i) {
      auto [v, entry] = order[i];
      const auto& rot = rg.rotation(v);
      std::size_t p = rg.position(v, entry);
      code.push_back(static_cast<int>(rot.size()));
      for (std::size_t k = 0; k < rot.size(); ++k) {
        std::size_t e = rot[(p + k) % rot.size()];
        if (elabel[e] < 0) elabel[e] = next_e++;
        std::size_t w = g.other_end(e, v);
        if (vlabel[w] < 0) {
          vlabel[w] = next_v++;
          order.push_back({w, e});
        }
        code.push_back(elabel[e]);
        code.push_back(vlabel[w]);
      }
      if (!best.empty()) {
        auto n = std::min(code.size(), best.size());
        auto cmp = std::lexicographical_compare_three_way(code.begin(), code.begin() + static_cast<std::ptrdiff_t>(n),
                                                          best.begin(), best.begin() + static_cast<std::ptrdiff_t>(n));
        if (cmp > 0) worse = true;
      }
    }
    if (!worse && (best.empty() || code < best)) best = code;
  }
  return best;
}

struct CycleSides {
  EdgeSet left_edges;
  EdgeSet right_edges;
  std::vector<std::size_t> left_vertices;
  std::vector<std::size_t> right_vertices;
};

/*
 * Splits the edges and vertices off a directed cycle of a plane ribbon graph
 * into its left side (the interior of a counterclockwise cycle) and right side.
 */
inline CycleSides classify_sides(const RibbonGraph& rg, const std::vector<Dart>& cycle) {
  const auto& g = rg.graph();
  if (!is_plane(rg)) throw InputError("classify_sides requires a plane ribbon graph");
  if (cycle.size() < 2) throw InputError("cycle must have at least two edges");
  EdgeSet on_cycle;
  std::vector<bool> vertex_on(g.vertex_count(), false);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    Dart d = cycle[i];
    if (d.edge >= g.edge_count() || !g.is_incident(d.edge, d.from)) throw InputError("cycle has an invalid dart");
    if (rg.head(d) != cycle[(i + 1) % cycle.size()].from) throw InputError("cycle darts do not chain");
    if (on_cycle.contains(d.edge) || vertex_on[d.from]) throw InputError("cycle repeats an edge or vertex");
    on_cycle.insert(d.edge);
    vertex_on[d.from] = true;
  }
  auto face = face_of_darts(rg);
  std::size_t face_count = *std::max_element(face.begin(), face.end()) + 1;
  std::vector<std::vector<std::size_t>> adjacent(face_count);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (on_cycle.contains(e)) continue;
    std::size_t f1 = face[2 * e], f2 = face[2 * e + 1];
    adjacent[f1].push_back(f2);
    adjacent[f2].push_back(f1);
  }
  auto flood = [&](bool forward) {
    std::vector<bool> in(face_count, false);
    std::vector<std::size_t> stack;
    for (Dart d : cycle) {
      std::size_t f = face[rg.dart_index(forward ? d : rg.reversed(d))];
      if (!in[f]) in[f] = true, stack.push_back(f);
    }
    while (!stack.empty()) {
      std::size_t f = stack.back();
      stack.pop_back();
      for (std::size_t h : adjacent[f])
        if (!in[h]) in[h] = true, stack.push_back(h);
    }
    return in;
  };
  // a face traced by next_edge lies to the right of its darts
  auto left = flood(false);
  auto right = flood(true);
  for (std::size_t f = 0; f < face_count; ++f)
    if (left[f] && right[f]) throw InvariantViolation("cycle does not separate the plane");
  CycleSides out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (on_cycle.contains(e)) continue;
    (left[face[2 * e]] ? out.left_edges : out.right_edges).insert(e);
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (vertex_on[v]) continue;
    std::size_t e = g.incident_edges(v).front();
    (out.left_edges.contains(e) ? out.left_vertices : out.right_vertices).push_back(v);
  }
  return out;
}

}  // namespace sandtorsor
