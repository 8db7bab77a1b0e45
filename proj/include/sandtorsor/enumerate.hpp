#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ribbon.hpp"

namespace sandtorsor {

namespace detail {

inline std::string vname(std::size_t i) { return "v" + std::to_string(i); }
inline std::string ename(std::size_t i) { return "e" + std::to_string(i); }

struct MapDraft {
  std::size_t vertices = 1;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> rotation{{}};

  RibbonGraph build() const {
    std::vector<std::string> vs;
    for (std::size_t v = 0; v < vertices; ++v) vs.push_back(vname(v));
    std::vector<EdgeSpec> es;
    for (std::size_t e = 0; e < edges.size(); ++e) es.push_back({ename(e), vname(edges[e].first), vname(edges[e].second)});
    Rotation rot;
    for (std::size_t v = 0; v < vertices; ++v) {
      auto& list = rot[vname(v)];
      for (std::size_t e : rotation[v]) list.push_back(ename(e));
    }
    return RibbonGraph(Multigraph(vs, es), rot);
  }
};

inline MapDraft draft_of(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  MapDraft d;
  d.vertices = g.vertex_count();
  for (std::size_t e = 0; e < g.edge_count(); ++e) d.edges.push_back(g.ends(e));
  d.rotation = rg.rotations();
  return d;
}

inline void insert_after(std::vector<std::size_t>& order, std::size_t pos, std::size_t e) {
  if (order.empty()) order.push_back(e);
  else order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos + 1), e);
}

/* Every map obtained by adding one edge: a pendant edge at a corner, or a chord between two corners. */
inline std::vector<MapDraft> grow(const RibbonGraph& rg, bool plane_only) {
  MapDraft base = draft_of(rg);
  const auto& g = rg.graph();
  std::size_t fresh = base.edges.size();
  std::vector<MapDraft> out;
  struct Corner {
    std::size_t vertex, pos, face;
  };
  std::vector<Corner> corners;
  auto face = face_of_darts(rg);
  for (std::size_t v = 0; v < base.vertices; ++v) {
    const auto& rot = base.rotation[v];
    if (rot.empty()) {
      corners.push_back({v, 0, 0});
      continue;
    }
    for (std::size_t i = 0; i < rot.size(); ++i)
      corners.push_back({v, i, face[rg.dart_index({rot[i], g.other_end(rot[i], v)})]});
  }
  for (const auto& c : corners) {
    MapDraft d = base;
    std::size_t w = d.vertices++;
    d.edges.push_back({c.vertex, w});
    insert_after(d.rotation[c.vertex], c.pos, fresh);
    d.rotation.push_back({fresh});
    out.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < corners.size(); ++i)
    for (std::size_t j = i + 1; j < corners.size(); ++j) {
      const auto& a = corners[i];
      const auto& b = corners[j];
      if (a.vertex == b.vertex || (plane_only && a.face != b.face)) continue;
      MapDraft d = base;
      d.edges.push_back({a.vertex, b.vertex});
      insert_after(d.rotation[a.vertex], a.pos, fresh);
      insert_after(d.rotation[b.vertex], b.pos, fresh);
      out.push_back(std::move(d));
    }
  return out;
}

}  // namespace detail

/*
 * Connected loopless ribbon graphs with 1..max_edges edges, one per ribbon
 * isomorphism class, ordered by edge count then canonical code.
 */
inline std::vector<RibbonGraph> enumerate_ribbon_graphs(std::size_t max_edges, bool plane_only) {
  std::vector<RibbonGraph> out;
  std::vector<RibbonGraph> level{detail::MapDraft{}.build()};
  for (std::size_t m = 1; m <= max_edges; ++m) {
    std::map<std::vector<int>, RibbonGraph> next;
    for (const auto& rg : level)
      for (const auto& draft : detail::grow(rg, plane_only)) {
        RibbonGraph child = draft.build();
        auto code = canonical_code(child);
        if (!next.count(code)) next.emplace(std::move(code), std::move(child));
      }
    level.clear();
    for (auto& [code, rg] : next) {
      level.push_back(rg);
      out.push_back(std::move(rg));
    }
  }
  return out;
}

inline std::vector<RibbonGraph> enumerate_plane_graphs(std::size_t max_edges) {
  return enumerate_ribbon_graphs(max_edges, true);
}

/* Canonical form of an abstract multigraph: minimal multiplicity matrix over degree-respecting relabelings. */
inline std::vector<int> graph_canonical_form(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    ++mult[a][b];
    ++mult[b][a];
  }
  std::vector<std::vector<int>> signature(n);
  for (std::size_t v = 0; v < n; ++v) {
    signature[v].push_back(static_cast<int>(g.degree(v)));
    std::vector<int> nb;
    for (std::size_t w = 0; w < n; ++w)
      for (int k = 0; k < mult[v][w]; ++k) nb.push_back(static_cast<int>(g.degree(w)));
    std::sort(nb.begin(), nb.end());
    signature[v].insert(signature[v].end(), nb.begin(), nb.end());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return signature[a] < signature[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && signature[order[j]] == signature[order[i]]) ++j;
    blocks.push_back({i, j});
    i = j;
  }
  std::vector<int> best;
  std::vector<int> code;
  auto evaluate = [&] {
    code.clear();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) code.push_back(mult[order[i]][order[j]]);
    if (best.empty() || code < best) best = code;
  };
  auto permute = [&](auto&& self, std::size_t block) -> void {
    if (block == blocks.size()) {
      evaluate();
      return;
    }
    auto [lo, hi] = blocks[block];
    auto first = order.begin() + static_cast<std::ptrdiff_t>(lo);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(hi);
    std::sort(first, last);
    do self(self, block + 1);
    while (std::next_permutation(first, last));
  };
  permute(permute, 0);
  std::vector<int> out;
  std::vector<std::vector<int>> sigs;
  for (std::size_t v = 0; v < n; ++v) sigs.push_back(signature[v]);
  std::sort(sigs.begin(), sigs.end());
  out.push_back(static_cast<int>(n));
  for (auto& s : sigs) out.insert(out.end(), s.begin(), s.end());
  out.push_back(-1);
  out.insert(out.end(), best.begin(), best.end());
  return out;
}

/* Connected loopless multigraphs with 1..max_edges edges up to isomorphism. */
inline std::vector<Multigraph> enumerate_multigraphs(std::size_t max_edges) {
  using Draft = std::vector<std::pair<std::size_t, std::size_t>>;
  auto build = [](std::size_t n, const Draft& edges) {
    std::vector<std::string> vs;
    for (std::size_t v = 0; v < n; ++v) vs.push_back(detail::vname(v));
    std::vector<EdgeSpec> es;
    for (std::size_t e = 0; e < edges.size(); ++e)
      es.push_back({detail::ename(e), detail::vname(edges[e].first), detail::vname(edges[e].second)});
    return Multigraph(vs, es);
  };
  std::vector<Multigraph> out;
  std::vector<std::pair<std::size_t, Draft>> level{{1, {}}};
  for (std::size_t m = 1; m <= max_edges; ++m) {
    std::map<std::vector<int>, std::pair<std::size_t, Draft>> next;
    auto offer = [&](std::size_t n, Draft d) {
      auto code = graph_canonical_form(build(n, d));
      if (!next.count(code)) next.emplace(std::move(code), std::make_pair(n, std::move(d)));
    };
    for (const auto& [n, edges] : level) {
      for (std::size_t v = 0; v < n; ++v) {
        Draft d = edges;
        d.push_back({v, n});
        offer(n + 1, std::move(d));
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          Draft d = edges;
          d.push_back({a, b});
          offer(n, std::move(d));
        }
    }
    level.clear();
    for (auto& [code, item] : next) {
      level.push_back(item);
      out.push_back(build(item.first, item.second));
    }
  }
  return out;
}

/* Cycle with k edges drawn counterclockwise; k = 1, 2 give one and two parallel edges. */
inline RibbonGraph cycle_graph(std::size_t k) {
  if (k == 0) throw InputError("cycle needs at least one edge");
  std::vector<std::string> vs;
  std::vector<EdgeSpec> es;
  Rotation rot;
  if (k <= 2) {
    vs = {"v0", "v1"};
    for (std::size_t i = 0; i < k; ++i) es.push_back({detail::ename(i), "v0", "v1"});
    rot["v0"] = k == 1 ? std::vector<std::string>{"e0"} : std::vector<std::string>{"e0", "e1"};
    rot["v1"] = k == 1 ? std::vector<std::string>{"e0"} : std::vector<std::string>{"e1", "e0"};
    return RibbonGraph(Multigraph(vs, es), rot);
  }
  for (std::size_t i = 0; i < k; ++i) {
    vs.push_back(detail::vname(i));
    es.push_back({detail::ename(i), detail::vname(i), detail::vname((i + 1) % k)});
  }
  for (std::size_t i = 0; i < k; ++i) rot[detail::vname(i)] = {detail::ename(i), detail::ename((i + k - 1) % k)};
  return RibbonGraph(Multigraph(vs, es), rot);
}

/* Two vertices joined by k parallel edges, embedded in the plane. */
inline RibbonGraph multi_edge_graph(std::size_t k) {
  std::vector<EdgeSpec> es;
  std::vector<std::string> forward, backward;
  for (std::size_t i = 0; i < k; ++i) {
    es.push_back({detail::ename(i), "v0", "v1"});
    forward.push_back(detail::ename(i));
  }
  backward.assign(forward.rbegin(), forward.rend());
  return RibbonGraph(Multigraph({"v0", "v1"}, es), Rotation{{"v0", forward}, {"v1", backward}});
}

/* Triple edge with the same cyclic order at both ends. */
inline RibbonGraph toroidal_triple_edge() {
  std::vector<EdgeSpec> es{{"e0", "v0", "v1"}, {"e1", "v0", "v1"}, {"e2", "v0", "v1"}};
  return RibbonGraph(Multigraph({"v0", "v1"}, es), Rotation{{"v0", {"e0", "e1", "e2"}}, {"v1", {"e0", "e1", "e2"}}});
}

/* K4 with a plane embedding (plane = true) or with one rotation flipped to reach genus one. */
inline RibbonGraph complete_graph_k4(bool plane) {
  // center v0, outer triangle v1 v2 v3 counterclockwise
  std::vector<EdgeSpec> es{{"a1", "v0", "v1"}, {"a2", "v0", "v2"}, {"a3", "v0", "v3"},
                           {"b1", "v1", "v2"}, {"b2", "v2", "v3"}, {"b3", "v3", "v1"}};
  Rotation rot{{"v0", {"a1", "a2", "a3"}},
               {"v1", {"b1", "a1", "b3"}},
               {"v2", {"b2", "a2", "b1"}},
               {"v3", {"b3", "a3", "b2"}}};
  if (!plane) rot["v0"] = {"a1", "a3", "a2"};
  return RibbonGraph(Multigraph({"v0", "v1", "v2", "v3"}, es), rot);
}

}  // namespace sandtorsor
