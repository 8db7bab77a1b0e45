#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"

namespace sandtorsor {

struct EdgeSpec {
  std::string id;
  std::string a;
  std::string b;
};

/*
 * Loopless multigraph with string ids. Vertices and edges are stored sorted
 * by id, and every index-based API refers to those positions.
 */
class Multigraph {
 public:
  Multigraph() = default;

  Multigraph(std::vector<std::string> vertex_ids, std::vector<EdgeSpec> edges) {
    std::sort(vertex_ids.begin(), vertex_ids.end());
    if (std::adjacent_find(vertex_ids.begin(), vertex_ids.end()) != vertex_ids.end())
      throw InputError("duplicate vertex id");
    vertex_ids_ = std::move(vertex_ids);
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& x, const EdgeSpec& y) { return x.id < y.id; });
    if (edges.size() > EdgeSet::capacity) throw InputError("more than 64 edges are not supported");
    for (std::size_t i = 0; i < vertex_ids_.size(); ++i) vertex_index_.emplace(vertex_ids_[i], i);
    incident_.assign(vertex_ids_.size(), {});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const EdgeSpec& spec = edges[i];
      if (i > 0 && edges[i - 1].id == spec.id) throw InputError("duplicate edge id '" + spec.id + "'");
      auto a = find_vertex(spec.a);
      auto b = find_vertex(spec.b);
      if (!a || !b) throw InputError("edge '" + spec.id + "' has an unknown endpoint");
      if (*a == *b) throw InputError("edge '" + spec.id + "' is a loop");
      edge_ids_.push_back(spec.id);
      ends_.emplace_back(std::min(*a, *b), std::max(*a, *b));
      edge_index_.emplace(spec.id, i);
      incident_[*a].push_back(i);
      incident_[*b].push_back(i);
    }
  }

  std::size_t vertex_count() const { return vertex_ids_.size(); }
  std::size_t edge_count() const { return edge_ids_.size(); }
  const std::string& vertex_id(std::size_t v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(std::size_t e) const { return edge_ids_.at(e); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<std::string>& edge_ids() const { return edge_ids_; }

  std::optional<std::size_t> find_vertex(std::string_view id) const {
    auto it = vertex_index_.find(std::string(id));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_edge(std::string_view id) const {
    auto it = edge_index_.find(std::string(id));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t vertex(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw InputError("unknown vertex '" + std::string(id) + "'");
  }
  std::size_t edge(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw InputError("unknown edge '" + std::string(id) + "'");
  }

  /* Endpoints with the smaller index first. */
  std::pair<std::size_t, std::size_t> ends(std::size_t e) const { return ends_.at(e); }
  bool is_incident(std::size_t e, std::size_t x) const { return ends_.at(e).first == x || ends_.at(e).second == x; }
  std::size_t other_end(std::size_t e, std::size_t x) const {
    auto [a, b] = ends_.at(e);
    if (x == a) return b;
    if (x == b) return a;
    throw InputError("vertex '" + vertex_id(x) + "' is not an end of edge '" + edge_id(e) + "'");
  }
  const std::vector<std::size_t>& incident_edges(std::size_t v) const { return incident_.at(v); }
  std::size_t degree(std::size_t v) const { return incident_.at(v).size(); }
  bool parallel(std::size_t e, std::size_t f) const { return e != f && ends_.at(e) == ends_.at(f); }
  /* Edges joining x and y. */
  std::vector<std::size_t> edges_between(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t e : incident_.at(x))
      if (other_end(e, x) == y) out.push_back(e);
    return out;
  }
  EdgeSet all_edges() const { return EdgeSet::first_n(edge_count()); }

  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> out;
    for (std::size_t e = 0; e < edge_count(); ++e)
      out.push_back({edge_ids_[e], vertex_ids_[ends_[e].first], vertex_ids_[ends_[e].second]});
    return out;
  }

  std::vector<std::string> edge_names(EdgeSet s) const {
    std::vector<std::string> out;
    for (std::size_t e : s.elements()) out.push_back(edge_id(e));
    return out;
  }
  EdgeSet edge_set(const std::vector<std::string>& ids) const {
    EdgeSet s;
    for (const auto& id : ids) s.insert(edge(id));
    return s;
  }

  friend bool operator==(const Multigraph& x, const Multigraph& y) {
    return x.vertex_ids_ == y.vertex_ids_ && x.edge_ids_ == y.edge_ids_ && x.ends_ == y.ends_;
  }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<std::string, std::size_t, std::less<>> vertex_index_;
  std::map<std::string, std::size_t, std::less<>> edge_index_;
};

/* Id of the vertex that the endpoints of e merge into. */
inline const std::string& merged_vertex_id(const Multigraph& g, std::size_t e) { return g.vertex_id(g.ends(e).first); }

/* Image of vertex v after contracting e. */
inline const std::string& contracted_vertex_id(const Multigraph& g, std::size_t e, std::size_t v) {
  return v == g.ends(e).second ? merged_vertex_id(g, e) : g.vertex_id(v);
}

inline Multigraph contract(const Multigraph& g, std::size_t e) {
  auto [keep, drop] = g.ends(e);
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (v != drop) vertices.push_back(g.vertex_id(v));
  std::vector<EdgeSpec> edges;
  for (std::size_t f = 0; f < g.edge_count(); ++f) {
    if (f == e || g.parallel(e, f)) continue;
    auto [a, b] = g.ends(f);
    edges.push_back({g.edge_id(f), g.vertex_id(a == drop ? keep : a), g.vertex_id(b == drop ? keep : b)});
  }
  return Multigraph(std::move(vertices), std::move(edges));
}

inline Multigraph contract(const Multigraph& g, std::string_view e) { return contract(g, g.edge(e)); }

inline Multigraph delete_edge(const Multigraph& g, std::size_t e) {
  std::vector<EdgeSpec> edges = g.edge_specs();
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
  return Multigraph(g.vertex_ids(), std::move(edges));
}

inline Multigraph delete_edge(const Multigraph& g, std::string_view e) { return delete_edge(g, g.edge(e)); }

/* Re-express an edge set of `from` in the indexing of `to`; edges absent from `to` are dropped. */
inline EdgeSet translate_edges(const Multigraph& from, EdgeSet s, const Multigraph& to) {
  EdgeSet out;
  for (std::size_t e : s.elements())
    if (auto f = to.find_edge(from.edge_id(e))) out.insert(*f);
  return out;
}

/* Whether the edges in `edges` connect every vertex. */
inline bool spans_connected(const Multigraph& g, EdgeSet edges) {
  if (g.vertex_count() == 0) return true;
  DisjointSets ds(g.vertex_count());
  std::size_t components = g.vertex_count();
  for (std::size_t e : edges.elements()) {
    auto [a, b] = g.ends(e);
    if (ds.unite(a, b)) --components;
  }
  return components == 1;
}

inline bool is_connected(const Multigraph& g) { return spans_connected(g, g.all_edges()); }

inline bool is_spanning_tree(const Multigraph& g, EdgeSet t) {
  if (g.vertex_count() == 0) return t.empty();
  return t.size() + 1 == g.vertex_count() && spans_connected(g, t) && (t - g.all_edges()).empty();
}

namespace detail {

inline void grow_trees(const Multigraph& g, std::size_t next, EdgeSet chosen, std::vector<SpanningTree>& out) {
  if (chosen.size() + 1 == g.vertex_count()) {
    out.push_back(chosen);
    return;
  }
  if (next == g.edge_count()) return;
  auto [a, b] = g.ends(next);
  DisjointSets ds(g.vertex_count());
  for (std::size_t e : chosen.elements()) ds.unite(g.ends(e).first, g.ends(e).second);
  if (ds.find(a) != ds.find(b)) grow_trees(g, next + 1, chosen.with(next), out);
  EdgeSet rest = chosen | (g.all_edges() - EdgeSet::first_n(next + 1));
  if (spans_connected(g, rest)) grow_trees(g, next + 1, chosen, out);
}

}  // namespace detail

/* All spanning trees, in lexicographic order of their sorted edge indices. */
inline std::vector<SpanningTree> spanning_trees(const Multigraph& g) {
  if (!is_connected(g)) throw InputError("spanning trees requested for a disconnected graph");
  std::vector<SpanningTree> out;
  detail::grow_trees(g, 0, EdgeSet{}, out);
  return out;
}

/* Component label per vertex of g with vertex `removed` deleted (npos for the removed vertex). */
inline std::vector<std::size_t> components_without(const Multigraph& g, std::size_t removed) {
  DisjointSets ds(g.vertex_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    if (a != removed && b != removed) ds.unite(a, b);
  }
  std::vector<std::size_t> label(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) label[v] = v == removed ? npos : ds.find(v);
  return label;
}

inline std::vector<std::size_t> cut_vertices(const Multigraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) {
    auto label = components_without(g, x);
    std::size_t first = npos;
    bool split = false;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (v == x) continue;
      if (first == npos) first = label[v];
      else if (label[v] != first) split = true;
    }
    if (split) out.push_back(x);
  }
  return out;
}

inline bool is_two_connected(const Multigraph& g) { return is_connected(g) && cut_vertices(g).empty(); }

/* True iff every path between edges a and b passes through vertex x. */
inline bool separates(const Multigraph& g, std::size_t x, std::size_t a, std::size_t b) {
  if (x >= g.vertex_count() || a >= g.edge_count() || b >= g.edge_count()) throw InputError("unknown id in separates");
  if (a == b) return false;
  auto label = components_without(g, x);
  auto side = [&](std::size_t e) {
    std::vector<std::size_t> out;
    auto [u, v] = g.ends(e);
    if (u != x) out.push_back(label[u]);
    if (v != x) out.push_back(label[v]);
    return out;
  };
  for (std::size_t p : side(a))
    for (std::size_t q : side(b))
      if (p == q) return false;
  return true;
}

}  // namespace sandtorsor
