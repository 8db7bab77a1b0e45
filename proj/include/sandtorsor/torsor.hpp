#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "report.hpp"
#include "rotor.hpp"

namespace sandtorsor {

enum class Variant { r, rbar, rinv, rbarinv };

inline constexpr Variant kAllVariants[] = {Variant::r, Variant::rbar, Variant::rinv, Variant::rbarinv};

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::r: return "r";
    case Variant::rbar: return "rbar";
    case Variant::rinv: return "rinv";
    case Variant::rbarinv: return "rbarinv";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  for (Variant v : kAllVariants)
    if (to_string(v) == s) return v;
  throw InputError("unknown variant '" + s + "'");
}

inline bool reverses_structure(Variant v) { return v == Variant::rbar || v == Variant::rbarinv; }
inline bool negates_class(Variant v) { return v == Variant::rinv || v == Variant::rbarinv; }

/* The structure a variant routes on: the given one, or its reversal. */
inline RibbonGraph variant_structure(const RibbonGraph& rg, Variant v) { return reverses_structure(v) ? reverse(rg) : rg; }

/* Variant action of the class [c - s] on t, by routing one chip on the variant structure. */
inline SpanningTree act_chip_pair(const RibbonGraph& structure, Variant v, SpanningTree t, std::size_t c, std::size_t s) {
  return negates_class(v) ? route_tree(structure, t, s, c) : route_tree(structure, t, c, s);
}

/* Action of Pic0 on spanning trees of one ribbon graph, memoized per (class, tree). */
class TorsorAction {
 public:
  using Evaluator = std::function<SpanningTree(const SandpileClass&, SpanningTree)>;

  TorsorAction(const RibbonGraph& rg, Variant v) : rg_(rg), variant_(v) {
    auto structure = std::make_shared<RibbonGraph>(variant_structure(rg, v));
    const Multigraph* g = &rg_.graph();
    eval_ = [structure, g, v](const SandpileClass& cls, SpanningTree t) {
      Divisor d = negates_class(v) ? -cls.rep : cls.rep;
      Divisor at_sink = move_to_sink(*g, d, kClassSink);
      return route_divisor(*structure, t, at_sink, kClassSink);
    };
  }

  TorsorAction(const RibbonGraph& rg, Variant tag, Evaluator eval) : rg_(rg), variant_(tag), eval_(std::move(eval)) {}

  Variant variant() const { return variant_; }
  const RibbonGraph& ribbon() const { return rg_; }

  SpanningTree act(const SandpileClass& cls, SpanningTree t) const {
    auto key = std::make_pair(cls.rep.chips(), t.bits());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    SpanningTree out = eval_(cls, t);
    memo_.emplace(std::move(key), out);
    return out;
  }

  SpanningTree act(const Divisor& d, SpanningTree t) const { return act(class_of(rg_.graph(), d), t); }

 private:
  RibbonGraph rg_;
  Variant variant_;
  Evaluator eval_;
  mutable std::map<std::pair<std::vector<Chips>, std::uint64_t>, SpanningTree> memo_;
};

inline TorsorAction rotor_routing_action(const RibbonGraph& rg, Variant v = Variant::r) {
  if (!is_plane(rg)) throw InputError("rotor-routing torsor action requires a plane ribbon graph");
  return TorsorAction(rg, v);
}

/* Spanning trees with index lookup. */
class TreeCatalog {
 public:
  explicit TreeCatalog(const Multigraph& g) : trees_(spanning_trees(g)) {
    for (std::size_t i = 0; i < trees_.size(); ++i) index_.emplace(trees_[i], i);
  }
  std::size_t size() const { return trees_.size(); }
  SpanningTree operator[](std::size_t i) const { return trees_.at(i); }
  const std::vector<SpanningTree>& trees() const { return trees_; }
  std::size_t index_of(SpanningTree t) const {
    auto it = index_.find(t);
    if (it == index_.end()) throw InvariantViolation("edge set is not a spanning tree");
    return it->second;
  }

 private:
  std::vector<SpanningTree> trees_;
  std::unordered_map<EdgeSet, std::size_t, EdgeSetHash> index_;
};

/* table[class][tree] = index of the image tree. */
using ActionTable = std::vector<std::vector<std::size_t>>;

inline ActionTable action_table(const TorsorAction& a, const PicardGroup& pic, const TreeCatalog& trees) {
  ActionTable table(pic.size(), std::vector<std::size_t>(trees.size()));
  for (std::size_t i = 0; i < pic.size(); ++i)
    for (std::size_t t = 0; t < trees.size(); ++t) table[i][t] = trees.index_of(a.act(pic.element(i), trees[t]));
  return table;
}

/* Identity, compatibility with class addition, freeness, and transitivity of a tabulated action. */
inline CheckReport verify_action_table(const Multigraph& g, const ActionTable& table, const PicardGroup& pic,
                                       const TreeCatalog& trees, const std::string& instance = {},
                                       std::size_t full_pair_limit = 2'000'000) {
  CheckReport report;
  std::size_t nc = pic.size(), nt = trees.size();
  if (nc != nt) report.record("class-count", false, instance, "classes " + std::to_string(nc) + " trees " + std::to_string(nt));
  for (std::size_t t = 0; t < nt; ++t)
    report.record("identity", table[0][t] == t, instance, "tree " + to_string(g, trees[t]));
  if (nc * nc * nt <= full_pair_limit) {
    for (std::size_t i = 0; i < nc; ++i)
      for (std::size_t j = 0; j < nc; ++j) {
        std::size_t sum = pic.index_of(class_of(g, pic.representative(i) + pic.representative(j)));
        for (std::size_t t = 0; t < nt; ++t)
          report.record("compatibility", table[sum][t] == table[i][table[j][t]], instance,
                        "classes " + std::to_string(i) + "+" + std::to_string(j) + " tree " + to_string(g, trees[t]));
      }
  } else {
    for (std::size_t i = 0; i < nc; ++i)
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (v == kClassSink) continue;
        std::size_t gen = pic.step(0, v), sum = pic.step(i, v);
        for (std::size_t t = 0; t < nt; ++t)
          report.record("compatibility", table[sum][t] == table[i][table[gen][t]], instance,
                        "class " + std::to_string(i) + " + generator " + g.vertex_id(v));
      }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<bool> hit(nt, false);
    bool injective = true;
    for (std::size_t i = 0; i < nc; ++i) {
      if (hit[table[i][t]]) injective = false;
      hit[table[i][t]] = true;
    }
    report.record("freeness", injective, instance, "tree " + to_string(g, trees[t]));
    report.record("transitivity", std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }), instance,
                  "tree " + to_string(g, trees[t]));
  }
  return report;
}

inline CheckReport verify_torsor_axioms(const TorsorAction& a) {
  const auto& g = a.ribbon().graph();
  PicardGroup pic(g);
  TreeCatalog trees(g);
  return verify_action_table(g, action_table(a, pic, trees), pic, trees, to_string(a.ribbon()));
}

/*
 * Routes every class from every sink, using the sink-reduced representative
 * and a second shifted representative; all outputs for one (class, tree)
 * must agree.
 */
inline CheckReport verify_sink_invariance(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  CheckReport report;
  PicardGroup pic(g);
  TreeCatalog trees(g);
  std::size_t n = g.vertex_count();
  std::vector<Divisor> shift(n);
  for (std::size_t s = 0; s < n; ++s) {
    Divisor delta(n);
    Chips total = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (v != s) total += delta[v] = static_cast<Chips>(g.degree(v));
    delta[s] = -total;
    shift[s] = delta - stabilize(g, delta, s);
  }
  std::string instance = to_string(rg);
  for (std::size_t i = 0; i < pic.size(); ++i) {
    std::vector<std::pair<std::size_t, Divisor>> reps;
    for (std::size_t s = 0; s < n; ++s) {
      Divisor reduced = reduce(g, pic.representative(i), s);
      reps.push_back({s, reduced});
      reps.push_back({s, reduced + shift[s]});
    }
    for (std::size_t t = 0; t < trees.size(); ++t) {
      SpanningTree base = route_divisor(rg, trees[t], reps[0].second, reps[0].first);
      for (std::size_t k = 1; k < reps.size(); ++k) {
        SpanningTree other = route_divisor(rg, trees[t], reps[k].second, reps[k].first);
        report.record("sink-invariance", other == base, instance,
                      "class " + std::to_string(i) + " tree " + to_string(g, trees[t]) + " sink " +
                          g.vertex_id(reps[0].first) + " gives " + to_string(g, base) + ", sink " +
                          g.vertex_id(reps[k].first) + " gives " + to_string(g, other));
      }
    }
  }
  return report;
}

struct ConsistencyOptions {
  /* Also try chip/sink pairs that are not adjacent (conditions 1 and 2 only). */
  bool nonadjacent_pairs = false;
};

/* Contraction and deletion minors of one ribbon graph, per edge. */
class MinorCache {
 public:
  MinorCache(const RibbonGraph& rg, Variant v) : rg_(rg), variant_(v) {
    std::size_t m = rg.graph().edge_count();
    contracted_.resize(m);
    deleted_.resize(m);
  }
  const RibbonGraph& contracted(std::size_t e) {
    if (!contracted_[e]) contracted_[e] = std::make_unique<RibbonGraph>(variant_structure(ribbon_contract(rg_, e), variant_));
    return *contracted_[e];
  }
  const RibbonGraph& deleted(std::size_t e) {
    if (!deleted_[e]) deleted_[e] = std::make_unique<RibbonGraph>(variant_structure(ribbon_delete(rg_, e), variant_));
    return *deleted_[e];
  }

 private:
  const RibbonGraph& rg_;
  Variant variant_;
  std::vector<std::unique_ptr<RibbonGraph>> contracted_, deleted_;
};

/*
 * Contraction-deletion consistency of a variant: for each edge f joining
 * c and s and each tree T with T' the image of T under [c - s], shared tree
 * edges contract compatibly, shared non-edges delete compatibly, and edges
 * cut off from f by a vertex keep their membership.
 */
inline CheckReport verify_consistency(Variant variant, const RibbonGraph& rg, const ConsistencyOptions& opts = {}) {
  if (!is_plane(rg)) throw InputError("consistency is defined for plane ribbon graphs");
  const auto& g = rg.graph();
  CheckReport report;
  RibbonGraph structure = variant_structure(rg, variant);
  MinorCache minors(rg, variant);
  auto trees = spanning_trees(g);
  std::string instance = to_string(rg);
  auto cuts = cut_vertices(g);

  struct Pair {
    std::size_t c, s, f;
  };
  std::vector<Pair> pairs;
  if (opts.nonadjacent_pairs) {
    for (std::size_t c = 0; c < g.vertex_count(); ++c)
      for (std::size_t s = 0; s < g.vertex_count(); ++s)
        if (c != s && g.edges_between(c, s).empty()) pairs.push_back({c, s, npos});
  } else {
    for (std::size_t f = 0; f < g.edge_count(); ++f) {
      auto [a, b] = g.ends(f);
      pairs.push_back({a, b, f});
      pairs.push_back({b, a, f});
    }
  }

  for (const auto& [c, s, f] : pairs) {
    std::string where = " c=" + g.vertex_id(c) + " s=" + g.vertex_id(s) + (f == npos ? "" : " f=" + g.edge_id(f));
    for (SpanningTree t : trees) {
      SpanningTree image = act_chip_pair(structure, variant, t, c, s);
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [x, y] = g.ends(e);
        bool joins_pair = (x == c && y == s) || (x == s && y == c);
        std::string detail = where + " T=" + to_string(g, t) + " e=" + g.edge_id(e) + " T'=" + to_string(g, image);
        if (t.contains(e) && image.contains(e) && !joins_pair) {
          const RibbonGraph& minor = minors.contracted(e);
          const auto& mg = minor.graph();
          std::size_t mc = mg.vertex(contracted_vertex_id(g, e, c));
          std::size_t ms = mg.vertex(contracted_vertex_id(g, e, s));
          SpanningTree got = act_chip_pair(minor, variant, translate_edges(g, t.without(e), mg), mc, ms);
          SpanningTree want = translate_edges(g, image.without(e), mg);
          report.record("contraction", got == want, instance,
                        detail + " expected " + to_string(mg, want) + " actual " + to_string(mg, got));
        }
        if (!t.contains(e) && !image.contains(e)) {
          const RibbonGraph& minor = minors.deleted(e);
          const auto& mg = minor.graph();
          SpanningTree got = act_chip_pair(minor, variant, translate_edges(g, t, mg), mg.vertex(g.vertex_id(c)),
                                           mg.vertex(g.vertex_id(s)));
          SpanningTree want = translate_edges(g, image, mg);
          report.record("deletion", got == want, instance,
                        detail + " expected " + to_string(mg, want) + " actual " + to_string(mg, got));
        }
        if (f != npos && e != f) {
          bool separated = std::any_of(cuts.begin(), cuts.end(), [&](std::size_t v) { return separates(g, v, e, f); });
          if (separated)
            report.record("cut-vertex", t.contains(e) == image.contains(e), instance, detail + " membership changed");
        }
      }
    }
  }
  for (const char* name : {"contraction", "deletion", "cut-vertex"}) report.tally(name);
  return report;
}

/* Number of pairwise distinct actions among the four variants. */
inline std::size_t count_distinct_variants(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  PicardGroup pic(g);
  TreeCatalog trees(g);
  std::vector<ActionTable> tables;
  for (Variant v : kAllVariants) {
    auto table = action_table(TorsorAction(rg, v), pic, trees);
    if (std::find(tables.begin(), tables.end(), table) == tables.end()) tables.push_back(std::move(table));
  }
  return tables.size();
}

}  // namespace sandtorsor
