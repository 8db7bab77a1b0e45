#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "multigraph.hpp"

namespace sandtorsor {

using Chips = std::int64_t;

/* Integer chip count per vertex, indexed like the owning graph's vertices. */
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::size_t vertex_count) : chips_(vertex_count, 0) {}
  explicit Divisor(std::vector<Chips> chips) : chips_(std::move(chips)) {}

  static Divisor unit(std::size_t n, std::size_t v) {
    Divisor d(n);
    d.chips_.at(v) = 1;
    return d;
  }
  /* The divisor c - s. */
  static Divisor chip_pair(std::size_t n, std::size_t c, std::size_t s) {
    Divisor d(n);
    d.chips_.at(c) += 1;
    d.chips_.at(s) -= 1;
    return d;
  }

  std::size_t size() const { return chips_.size(); }
  Chips operator[](std::size_t v) const { return chips_[v]; }
  Chips& operator[](std::size_t v) { return chips_[v]; }
  const std::vector<Chips>& chips() const { return chips_; }

  Chips degree() const {
    Chips total = 0;
    for (Chips c : chips_) total = checked_add(total, c);
    return total;
  }

  Divisor& operator+=(const Divisor& o) {
    for (std::size_t v = 0; v < chips_.size(); ++v) chips_[v] = checked_add(chips_[v], o.chips_.at(v));
    return *this;
  }
  Divisor& operator-=(const Divisor& o) { return *this += -o; }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator-(Divisor a) {
    for (Chips& c : a.chips_) c = checked_mul(c, -1);
    return a;
  }
  friend Divisor operator*(Chips k, Divisor a) {
    for (Chips& c : a.chips_) c = checked_mul(c, k);
    return a;
  }
  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend auto operator<=>(const Divisor&, const Divisor&) = default;

 private:
  std::vector<Chips> chips_;
};

inline Divisor divisor_from_ids(const Multigraph& g, const std::map<std::string, Chips>& values) {
  Divisor d(g.vertex_count());
  for (const auto& [id, c] : values) d[g.vertex(id)] = c;
  return d;
}

inline std::vector<std::vector<Chips>> laplacian(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<Chips>> out(n, std::vector<Chips>(n, 0));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    ++out[a][a];
    ++out[b][b];
    --out[a][b];
    --out[b][a];
  }
  return out;
}

/* Fire v `times` times. */
inline Divisor fire(const Multigraph& g, Divisor d, std::size_t v, Chips times = 1) {
  if (v >= g.vertex_count()) throw InputError("unknown vertex in fire");
  d[v] = checked_add(d[v], checked_mul(-static_cast<Chips>(g.degree(v)), times));
  for (std::size_t e : g.incident_edges(v)) {
    std::size_t w = g.other_end(e, v);
    d[w] = checked_add(d[w], times);
  }
  return d;
}

inline constexpr std::size_t kFiringLimit = 50'000'000;

/* Fire non-sink vertices holding at least their degree until none remain. */
inline Divisor stabilize(const Multigraph& g, Divisor d, std::size_t s) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (v != s && d[v] < 0) throw InputError("stabilize requires a divisor nonnegative off the sink");
  std::size_t firings = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      auto deg = static_cast<Chips>(g.degree(v));
      if (v == s || deg == 0 || d[v] < deg) continue;
      Chips times = d[v] / deg;
      d = fire(g, std::move(d), v, times);
      firings += static_cast<std::size_t>(times);
      changed = true;
    }
    if (firings > kFiringLimit) throw InvariantViolation("stabilization exceeded its firing bound");
  }
  return d;
}

/* Equivalent divisor that is nonnegative off s, built from the stabilization of the max-chip divisor. */
inline Divisor move_to_sink(const Multigraph& g, const Divisor& d, std::size_t s) {
  if (!is_connected(g)) throw InputError("move_to_sink requires a connected graph");
  Chips debt = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (v != s) debt = std::max(debt, -d[v]);
  if (debt == 0) return d;
  Divisor delta(g.vertex_count());
  Chips total = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (v == s) continue;
    delta[v] = static_cast<Chips>(g.degree(v));
    total = checked_add(total, delta[v]);
  }
  delta[s] = -total;
  Divisor settled = stabilize(g, delta, s);
  return d + debt * (delta - settled);
}

inline bool in_div0_sink(const Divisor& d, std::size_t s) {
  if (d.degree() != 0) return false;
  for (std::size_t v = 0; v < d.size(); ++v)
    if (v != s && d[v] < 0) return false;
  return true;
}

/* Vertices off q that do not burn when fire spreads from q; empty iff d is q-reduced. */
inline std::vector<bool> unburnt_set(const Multigraph& g, const Divisor& d, std::size_t q) {
  std::size_t n = g.vertex_count();
  std::vector<bool> burnt(n, false);
  burnt[q] = true;
  std::vector<Chips> exposure(n, 0);
  std::vector<std::size_t> stack{q};
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e : g.incident_edges(v)) {
      std::size_t w = g.other_end(e, v);
      if (burnt[w]) continue;
      if (++exposure[w] > d[w]) {
        burnt[w] = true;
        stack.push_back(w);
      }
    }
  }
  std::vector<bool> unburnt(n);
  for (std::size_t v = 0; v < n; ++v) unburnt[v] = !burnt[v];
  return unburnt;
}

inline bool is_reduced(const Multigraph& g, const Divisor& d, std::size_t q) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (v != q && d[v] < 0) return false;
  auto unburnt = unburnt_set(g, d, q);
  return std::none_of(unburnt.begin(), unburnt.end(), [](bool b) { return b; });
}

/* The unique q-reduced divisor equivalent to d. */
inline Divisor reduce(const Multigraph& g, const Divisor& d, std::size_t q) {
  Divisor cur = move_to_sink(g, d, q);
  for (std::size_t rounds = 0;; ++rounds) {
    if (rounds > kFiringLimit) throw InvariantViolation("reduction exceeded its round bound");
    auto unburnt = unburnt_set(g, cur, q);
    if (std::none_of(unburnt.begin(), unburnt.end(), [](bool b) { return b; })) return cur;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.ends(e);
      if (unburnt[a] == unburnt[b]) continue;
      std::size_t inside = unburnt[a] ? a : b;
      std::size_t outside = unburnt[a] ? b : a;
      --cur[inside];
      ++cur[outside];
    }
  }
}

/* Canonical sink for class representatives: the smallest vertex id. */
inline constexpr std::size_t kClassSink = 0;

inline bool same_class(const Multigraph& g, const Divisor& a, const Divisor& b) {
  if (a.degree() != b.degree()) return false;
  return reduce(g, a, kClassSink) == reduce(g, b, kClassSink);
}

/* Element of Pic0 held as its reduced representative. */
struct SandpileClass {
  Divisor rep;
  friend bool operator==(const SandpileClass&, const SandpileClass&) = default;
  friend auto operator<=>(const SandpileClass&, const SandpileClass&) = default;
};

inline SandpileClass class_of(const Multigraph& g, const Divisor& d) {
  if (d.degree() != 0) throw InputError("sandpile classes require degree zero");
  return {reduce(g, d, kClassSink)};
}
inline SandpileClass identity_class(const Multigraph& g) { return {Divisor(g.vertex_count())}; }
inline SandpileClass add(const Multigraph& g, const SandpileClass& a, const SandpileClass& b) {
  return class_of(g, a.rep + b.rep);
}
inline SandpileClass negate(const Multigraph& g, const SandpileClass& a) { return class_of(g, -a.rep); }

struct GroupStructure {
  std::vector<BigInt> invariant_factors;
  BigInt order() const {
    BigInt out = 1;
    for (const auto& d : invariant_factors) out *= d;
    return out;
  }
};

inline IntMatrix reduced_laplacian(const Multigraph& g, std::size_t q = kClassSink) {
  auto full = laplacian(g);
  IntMatrix out;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (i == q) continue;
    auto& row = out.emplace_back();
    for (std::size_t j = 0; j < full.size(); ++j)
      if (j != q) row.emplace_back(full[i][j]);
  }
  return out;
}

inline GroupStructure group_structure(const Multigraph& g) {
  if (!is_connected(g)) throw InputError("group structure requires a connected graph");
  return {invariant_factors(reduced_laplacian(g))};
}

/*
 * All classes of Pic0 as reduced representatives, with the action of each
 * generator [v - q] tabulated.
 */
class PicardGroup {
 public:
  explicit PicardGroup(const Multigraph& g) : vertex_count_(g.vertex_count()) {
    if (!is_connected(g)) throw InputError("Pic0 enumeration requires a connected graph");
    std::size_t n = g.vertex_count();
    intern(Divisor(n));
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      std::vector<std::size_t> row(n, 0);
      row[kClassSink] = i;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == kClassSink) continue;
        Divisor next = reduce(g, classes_[i] + Divisor::chip_pair(n, v, kClassSink), kClassSink);
        row[v] = intern(std::move(next));
      }
      step_.push_back(std::move(row));
    }
  }

  std::size_t size() const { return classes_.size(); }
  const Divisor& representative(std::size_t i) const { return classes_.at(i); }
  SandpileClass element(std::size_t i) const { return {classes_.at(i)}; }
  std::size_t index_of(const SandpileClass& c) const { return index_of(c.rep); }
  std::size_t index_of(const Divisor& reduced) const {
    auto it = index_.find(reduced);
    if (it == index_.end()) throw InvariantViolation("divisor is not a reduced class representative");
    return it->second;
  }
  /* Index of class i plus [v - q]. */
  std::size_t step(std::size_t i, std::size_t v) const { return step_.at(i).at(v); }
  std::size_t vertex_count() const { return vertex_count_; }

 private:
  std::size_t intern(Divisor d) {
    auto [it, fresh] = index_.emplace(d, classes_.size());
    if (fresh) classes_.push_back(std::move(d));
    return it->second;
  }

  std::size_t vertex_count_;
  std::vector<Divisor> classes_;
  std::map<Divisor, std::size_t> index_;
  std::vector<std::vector<std::size_t>> step_;
};

}  // namespace sandtorsor
