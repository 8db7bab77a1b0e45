#pragma once

#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "lattice.hpp"
#include "multigraph.hpp"
#include "report.hpp"

namespace sandtorsor {

using SignVector = std::vector<int>;
using Orientation = std::map<std::string, std::pair<std::string, std::string>>;

namespace detail {

using QMatrix = std::vector<std::vector<BigRational>>;

/* Reduced row echelon form in place; returns pivot columns. */
inline std::vector<std::size_t> rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    BigRational lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      BigRational k = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= k * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::vector<std::vector<BigRational>> nullspace(QMatrix a, std::size_t cols) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<BigRational>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRational> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<BigInt> primitive(const std::vector<BigRational>& v) {
  BigInt den = 1;
  for (const auto& x : v) den = boost::multiprecision::lcm(den, BigInt(boost::multiprecision::denominator(x)));
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& x : v) {
    out.push_back(BigInt(boost::multiprecision::numerator(x)) * (den / BigInt(boost::multiprecision::denominator(x))));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline QMatrix to_rational(const IntMatrix& m) {
  QMatrix q;
  for (const auto& row : m) q.emplace_back(row.begin(), row.end());
  return q;
}

/* Rows of m forming a maximal independent subset, in order. */
inline IntMatrix independent_rows(const IntMatrix& m) {
  IntMatrix out;
  for (const auto& row : m) {
    out.push_back(row);
    if (rank(out) < out.size()) out.pop_back();
  }
  return out;
}

/* Minimal-support vectors of the row space of m (one per antipodal pair, minimal nonzero entry positive). */
inline std::vector<SignVector> elementary_vectors(const IntMatrix& m, std::size_t n) {
  std::vector<SignVector> out;
  if (m.empty()) return out;
  std::map<std::uint64_t, bool> seen;
  std::size_t k = m.size();
  for (std::uint64_t zero = 0; zero < (std::uint64_t{1} << n); ++zero) {
    QMatrix sys;
    for (std::size_t j = 0; j < n; ++j) {
      if (!((zero >> j) & 1U)) continue;
      std::vector<BigRational> row;
      for (std::size_t i = 0; i < k; ++i) row.emplace_back(m[i][j]);
      sys.push_back(std::move(row));
    }
    std::vector<std::vector<BigRational>> ys;
    if (!sys.empty()) ys = nullspace(sys, k);
    else if (k == 1) ys = {std::vector<BigRational>{1}};
    if (ys.size() != 1) continue;
    std::vector<BigRational> v(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < k; ++i) v[j] += ys[0][i] * BigRational(m[i][j]);
    auto p = primitive(v);
    std::uint64_t support = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (p[j] != 0) support |= std::uint64_t{1} << j;
    if (seen.count(support)) continue;
    seen[support] = true;
    SignVector sv;
    for (const auto& x : p) {
      if (x > 1 || x < -1) throw InputError("matrix does not represent a regular matroid");
      sv.push_back(static_cast<int>(x));
    }
    for (int x : sv)
      if (x != 0) {
        if (x < 0)
          for (int& y : sv) y = -y;
        break;
      }
    out.push_back(std::move(sv));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace detail

inline std::uint64_t support_of(const SignVector& v) {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) s |= std::uint64_t{1} << j;
  return s;
}

inline SignVector negated(SignVector v) {
  for (int& x : v) x = -x;
  return v;
}

/* Every square submatrix has determinant in {-1, 0, 1}. */
inline bool is_totally_unimodular(const IntMatrix& m) {
  if (m.empty()) return true;
  std::size_t rows = m.size(), cols = m[0].size();
  for (const auto& row : m)
    for (const auto& x : row)
      if (x > 1 || x < -1) return false;
  for (std::uint64_t rmask = 1; rmask < (std::uint64_t{1} << rows); ++rmask) {
    std::size_t size = static_cast<std::size_t>(std::popcount(rmask));
    if (size < 2 || size > cols) continue;
    std::vector<std::size_t> rsel, csel;
    for (std::size_t i = 0; i < rows; ++i)
      if ((rmask >> i) & 1U) rsel.push_back(i);
    for (std::uint64_t cmask = 0; cmask < (std::uint64_t{1} << cols); ++cmask) {
      if (static_cast<std::size_t>(std::popcount(cmask)) != size) continue;
      csel.clear();
      for (std::size_t j = 0; j < cols; ++j)
        if ((cmask >> j) & 1U) csel.push_back(j);
      IntMatrix sub;
      for (std::size_t i : rsel) {
        std::vector<BigInt> row;
        for (std::size_t j : csel) row.push_back(m[i][j]);
        sub.push_back(std::move(row));
      }
      BigInt d = determinant(sub);
      if (d > 1 || d < -1) return false;
    }
  }
  return true;
}

struct MatroidClass {
  std::vector<BigInt> rep;
  friend bool operator==(const MatroidClass&, const MatroidClass&) = default;
  friend auto operator<=>(const MatroidClass&, const MatroidClass&) = default;
};

/* Oriented regular matroid given by a real representation whose row space is the cocircuit span. */
class RegularMatroid {
 public:
  RegularMatroid(std::vector<std::string> labels, const IntMatrix& matrix, bool check_unimodular = true)
      : labels_(std::move(labels)) {
    std::size_t n = labels_.size();
    if (n > 20) throw InputError("ground set too large (max 20)");
    for (const auto& row : matrix)
      if (row.size() != n) throw InputError("matrix width does not match the labels");
    if (check_unimodular && !is_totally_unimodular(matrix)) throw InputError("matrix is not totally unimodular");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (labels_[i] == labels_[j]) throw InputError("duplicate label '" + labels_[i] + "'");
    rows_ = detail::independent_rows(matrix);
    rank_ = rows_.size();

    cocircuits_ = detail::elementary_vectors(rows_, n);
    IntMatrix kernel;
    for (const auto& v : detail::nullspace(detail::to_rational(rows_.empty() ? IntMatrix{std::vector<BigInt>(n, 0)} : rows_), n))
      kernel.push_back(detail::primitive(v));
    circuits_ = detail::elementary_vectors(kernel, n);

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != rank_) continue;
      IntMatrix sub;
      for (const auto& row : rows_) {
        std::vector<BigInt> r;
        for (std::size_t j = 0; j < n; ++j)
          if ((mask >> j) & 1U) r.push_back(row[j]);
        sub.push_back(std::move(r));
      }
      if (determinant(sub) != 0) bases_.push_back(EdgeSet::from_bits(mask));
    }
    std::sort(bases_.begin(), bases_.end());

    IntMatrix gens;
    for (const auto* list : {&circuits_, &cocircuits_})
      for (const auto& v : *list) gens.emplace_back(v.begin(), v.end());
    lattice_ = hermite_basis(gens, n);
  }

  static RegularMatroid from_graph(const Multigraph& g, const Orientation& orientation) {
    if (!is_connected(g)) throw InputError("graphic matroids need a connected graph");
    IntMatrix m(g.vertex_count() > 0 ? g.vertex_count() - 1 : 0, std::vector<BigInt>(g.edge_count(), 0));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto it = orientation.find(g.edge_id(e));
      if (it == orientation.end()) throw InputError("orientation misses edge '" + g.edge_id(e) + "'");
      std::size_t tail = g.vertex(it->second.first), head = g.vertex(it->second.second);
      auto [a, b] = g.ends(e);
      if (!((tail == a && head == b) || (tail == b && head == a)))
        throw InputError("orientation of '" + g.edge_id(e) + "' does not match its ends");
      if (tail > 0) m[tail - 1][e] += 1;
      if (head > 0) m[head - 1][e] -= 1;
    }
    return RegularMatroid(g.edge_ids(), m, false);
  }

  /* Orientation from the smaller to the larger endpoint index. */
  static RegularMatroid from_graph(const Multigraph& g) {
    Orientation o;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.ends(e);
      o[g.edge_id(e)] = {g.vertex_id(a), g.vertex_id(b)};
    }
    return from_graph(g, o);
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t rank() const { return rank_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t element(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw InputError("unknown element '" + std::string(label) + "'");
  }
  EdgeSet element_set(const std::vector<std::string>& labels) const {
    EdgeSet s;
    for (const auto& l : labels) s.insert(element(l));
    return s;
  }
  std::vector<std::string> names(EdgeSet s) const {
    std::vector<std::string> out;
    for (std::size_t e : s.elements()) out.push_back(labels_[e]);
    return out;
  }
  const IntMatrix& matrix() const { return rows_; }
  const std::vector<EdgeSet>& bases() const { return bases_; }
  bool is_basis(EdgeSet b) const { return std::binary_search(bases_.begin(), bases_.end(), b); }
  std::size_t basis_index(EdgeSet b) const {
    auto it = std::lower_bound(bases_.begin(), bases_.end(), b);
    if (it == bases_.end() || *it != b) throw InputError("not a basis");
    return static_cast<std::size_t>(it - bases_.begin());
  }
  const std::vector<SignVector>& circuits() const { return circuits_; }
  const std::vector<SignVector>& cocircuits() const { return cocircuits_; }
  const HermiteBasis& lattice() const { return lattice_; }

  bool is_loop(std::size_t e) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const auto& row) { return row[e] == 0; });
  }
  bool is_coloop(std::size_t e) const {
    return std::all_of(bases_.begin(), bases_.end(), [&](EdgeSet b) { return b.contains(e); });
  }

  BigInt group_order() const {
    if (!lattice_.full_rank()) throw InvariantViolation("circuit and cocircuit lattices do not have full rank");
    return lattice_.index();
  }

  MatroidClass class_of(std::vector<BigInt> v) const {
    if (v.size() != size()) throw InputError("vector length does not match the ground set");
    return {lattice_.reduce(std::move(v))};
  }
  template <class T>
  MatroidClass class_of(const std::vector<T>& v) const {
    return class_of(std::vector<BigInt>(v.begin(), v.end()));
  }
  MatroidClass unit_class(std::size_t e) const {
    std::vector<BigInt> v(size(), 0);
    v.at(e) = 1;
    return class_of(std::move(v));
  }

  /* The circuit inside B + e through e, for e outside B. */
  const SignVector& fundamental_circuit(EdgeSet b, std::size_t e) const {
    std::uint64_t allowed = b.with(e).bits();
    for (const auto& c : circuits_) {
      auto s = support_of(c);
      if ((s & ~allowed) == 0 && ((s >> e) & 1U)) return c;
    }
    throw InvariantViolation("no fundamental circuit");
  }
  /* The cocircuit inside (E - B) + e through e, for e in B. */
  const SignVector& fundamental_cocircuit(EdgeSet b, std::size_t e) const {
    std::uint64_t allowed = (EdgeSet::first_n(size()) - b).with(e).bits();
    for (const auto& c : cocircuits_) {
      auto s = support_of(c);
      if ((s & ~allowed) == 0 && ((s >> e) & 1U)) return c;
    }
    throw InvariantViolation("no fundamental cocircuit");
  }

  RegularMatroid deletion(std::size_t e) const {
    if (is_coloop(e)) throw InputError("cannot delete the coloop '" + labels_.at(e) + "'");
    IntMatrix m;
    for (const auto& row : rows_) m.push_back(drop(row, e));
    return RegularMatroid(drop(labels_, e), m, false);
  }

  RegularMatroid contraction(std::size_t e) const {
    if (is_loop(e)) throw InputError("cannot contract the loop '" + labels_.at(e) + "'");
    std::size_t p = 0;
    while (rows_[p][e] == 0) ++p;
    IntMatrix m;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == p) continue;
      std::vector<BigInt> row(size());
      for (std::size_t j = 0; j < size(); ++j) row[j] = rows_[p][e] * rows_[i][j] - rows_[i][e] * rows_[p][j];
      m.push_back(drop(row, e));
    }
    return RegularMatroid(drop(labels_, e), m, false);
  }

 private:
  template <class T>
  static std::vector<T> drop(const std::vector<T>& v, std::size_t e) {
    std::vector<T> out;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != e) out.push_back(v[j]);
    return out;
  }

  std::vector<std::string> labels_;
  IntMatrix rows_;
  std::size_t rank_ = 0;
  std::vector<SignVector> circuits_, cocircuits_;
  std::vector<EdgeSet> bases_;
  HermiteBasis lattice_;
};

/* The graphic matroid of K_{3,3}'s dual: columns of a kernel basis of the incidence matrix. */
inline RegularMatroid cographic_k33() {
  std::vector<EdgeSpec> es;
  std::vector<std::string> vs{"a1", "a2", "a3", "b1", "b2", "b3"};
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) es.push_back({"x" + std::to_string(i) + std::to_string(j), "a" + std::to_string(i), "b" + std::to_string(j)});
  RegularMatroid graphic = RegularMatroid::from_graph(Multigraph(vs, es));
  IntMatrix dual;
  for (const auto& v : detail::nullspace(detail::to_rational(graphic.matrix()), graphic.size()))
    dual.push_back(detail::primitive(v));
  return RegularMatroid(graphic.labels(), dual, false);
}

/* R10 as [I | A] with A the signed circulant of (-1, 1, 0, 0, 1). */
inline RegularMatroid r10() {
  const int a[5][5] = {{-1, 1, 0, 0, 1}, {1, -1, 1, 0, 0}, {0, 1, -1, 1, 0}, {0, 0, 1, -1, 1}, {1, 0, 0, 1, -1}};
  IntMatrix m(5, std::vector<BigInt>(10, 0));
  std::vector<std::string> labels;
  for (int i = 0; i < 10; ++i) labels.push_back("r" + std::to_string(i));
  for (int i = 0; i < 5; ++i) {
    m[i][i] = 1;
    for (int j = 0; j < 5; ++j) m[i][5 + j] = a[i][j];
  }
  return RegularMatroid(labels, m, true);
}

// ---- signatures ----

/* One chosen signed vector per circuit and per cocircuit. */
struct SignaturePair {
  std::vector<SignVector> circuits;
  std::vector<SignVector> cocircuits;
  friend bool operator==(const SignaturePair&, const SignaturePair&) = default;
};

/* Minimal nonzero element positive, for both families. */
inline SignaturePair default_signatures(const RegularMatroid& m) { return {m.circuits(), m.cocircuits()}; }

inline std::vector<SignVector> reversed_signature(std::vector<SignVector> s) {
  for (auto& v : s) v = negated(v);
  return s;
}

inline const SignVector& chosen(const std::vector<SignVector>& signature, std::uint64_t support) {
  for (const auto& v : signature)
    if (support_of(v) == support) return v;
  throw InputError("signature has no vector on this support");
}

/* The signature is a valid choice for the given family: one of the two signs for each member, nothing else. */
inline bool is_signature_for(const std::vector<SignVector>& signature, const std::vector<SignVector>& family) {
  if (signature.size() != family.size()) return false;
  for (const auto& v : family) {
    bool found = false;
    for (const auto& w : signature)
      if (w == v || w == negated(v)) found = true;
    if (!found) return false;
  }
  return true;
}

/*
 * No nonzero nonnegative combination of the vectors sums to zero. Decided by
 * an exact phase-one simplex on lambda >= 0, sum(lambda) = 1,
 * sum(lambda_i v_i) = 0, with Bland's rule.
 */
inline bool is_acyclic(const std::vector<SignVector>& vectors) {
  if (vectors.empty()) return true;
  std::size_t m = vectors.size(), n = vectors[0].size();
  std::size_t rows = n + 1, cols = m + rows;
  detail::QMatrix tab(rows, std::vector<BigRational>(cols + 1, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) tab[j][i] = vectors[i][j];
  for (std::size_t i = 0; i < m; ++i) tab[n][i] = 1;
  tab[n][cols] = 1;
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    tab[r][m + r] = 1;
    basis[r] = m + r;
  }
  auto reduced_cost = [&](std::size_t c) {
    BigRational z = c >= m ? BigRational(1) : BigRational(0);
    for (std::size_t r = 0; r < rows; ++r)
      if (basis[r] >= m) z -= tab[r][c];
    return z;
  };
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c)
      if (reduced_cost(c) < 0) {
        enter = c;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    BigRational best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (tab[r][enter] <= 0) continue;
      BigRational ratio = tab[r][cols] / tab[r][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == rows) break;
    BigRational pivot = tab[leave][enter];
    for (auto& x : tab[leave]) x /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      BigRational k = tab[r][enter];
      for (std::size_t c = 0; c <= cols; ++c) tab[r][c] -= k * tab[leave][c];
    }
    basis[leave] = enter;
  }
  BigRational artificial = 0;
  for (std::size_t r = 0; r < rows; ++r)
    if (basis[r] >= m) artificial += tab[r][cols];
  return artificial > 0;
}

inline bool is_acyclic(const SignaturePair& p) { return is_acyclic(p.circuits) && is_acyclic(p.cocircuits); }

/* Signatures induced by a generic linear functional; always acyclic. */
inline SignaturePair functional_signatures(const RegularMatroid& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-1000, 1000);
  auto orient = [&](const std::vector<SignVector>& family) {
    for (;;) {
      std::vector<int> w(m.size());
      for (int& x : w) x = pick(rng);
      std::vector<SignVector> out;
      bool generic = true;
      for (const auto& v : family) {
        long long dot = 0;
        for (std::size_t j = 0; j < v.size(); ++j) dot += static_cast<long long>(w[j]) * v[j];
        if (dot == 0) generic = false;
        out.push_back(dot > 0 ? v : negated(v));
      }
      if (generic) return out;
    }
  };
  return {orient(m.circuits()), orient(m.cocircuits())};
}

namespace detail {

/* For each elementary vector of the minor, the restriction of the unique chosen vector of the parent that shrinks onto it. */
inline std::vector<SignVector> induce(const std::vector<SignVector>& parent_choice, const std::vector<SignVector>& minor_family,
                                      std::size_t e) {
  auto shrink = [e](const SignVector& v) {
    SignVector out;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != e) out.push_back(v[j]);
    return out;
  };
  std::vector<SignVector> out;
  for (const auto& target : minor_family) {
    std::uint64_t s = support_of(target);
    const SignVector* match = nullptr;
    for (const auto& v : parent_choice) {
      SignVector r = shrink(v);
      if (support_of(r) == s) {
        match = &v;
        break;
      }
    }
    if (!match) throw InvariantViolation("minor vector has no parent");
    SignVector r = shrink(*match);
    if (r != target && r != negated(target)) throw InvariantViolation("restricted vector is not elementary in the minor");
    out.push_back(r);
  }
  return out;
}

}  // namespace detail

inline SignaturePair induced_deletion(const SignaturePair& p, const RegularMatroid& minor, std::size_t e) {
  return {detail::induce(p.circuits, minor.circuits(), e), detail::induce(p.cocircuits, minor.cocircuits(), e)};
}

inline SignaturePair induced_contraction(const SignaturePair& p, const RegularMatroid& minor, std::size_t e) {
  return {detail::induce(p.circuits, minor.circuits(), e), detail::induce(p.cocircuits, minor.cocircuits(), e)};
}

enum class MatroidVariant { bby, prime, double_prime, triple_prime };

inline constexpr MatroidVariant kAllMatroidVariants[] = {MatroidVariant::bby, MatroidVariant::prime, MatroidVariant::double_prime,
                                                         MatroidVariant::triple_prime};

inline std::string to_string(MatroidVariant v) {
  switch (v) {
    case MatroidVariant::bby: return "bby";
    case MatroidVariant::prime: return "bby'";
    case MatroidVariant::double_prime: return "bby''";
    case MatroidVariant::triple_prime: return "bby'''";
  }
  return "?";
}

/* The signatures on which plain BBY reproduces the variant: bars on circuits, both, or cocircuits. */
inline SignaturePair variant_signatures(const SignaturePair& p, MatroidVariant v) {
  bool bar_circuits = v == MatroidVariant::prime || v == MatroidVariant::double_prime;
  bool bar_cocircuits = v == MatroidVariant::double_prime || v == MatroidVariant::triple_prime;
  return {bar_circuits ? reversed_signature(p.circuits) : p.circuits,
          bar_cocircuits ? reversed_signature(p.cocircuits) : p.cocircuits};
}

// ---- BBY ----

/* 0/1 vector of a basis: the chosen sign of each element in its fundamental circuit or cocircuit. */
inline SignVector bby_vector(const RegularMatroid& m, const SignaturePair& p, EdgeSet b) {
  if (!m.is_basis(b)) throw InputError("not a basis");
  SignVector out(m.size());
  for (std::size_t e = 0; e < m.size(); ++e) {
    const SignVector& elementary = b.contains(e) ? m.fundamental_cocircuit(b, e) : m.fundamental_circuit(b, e);
    const auto& family = b.contains(e) ? p.cocircuits : p.circuits;
    out[e] = chosen(family, support_of(elementary))[e] > 0 ? 1 : 0;
  }
  return out;
}

/* BBY action for fixed signatures, with the class-to-basis table built once. */
class BbyAction {
 public:
  BbyAction(const RegularMatroid& m, SignaturePair p) : m_(&m), pair_(std::move(p)) {
    for (EdgeSet b : m.bases()) {
      vectors_.push_back(bby_vector(m, pair_, b));
      classes_.push_back(m.class_of(vectors_.back()));
      if (!by_class_.emplace(classes_.back(), b).second) injective_ = false;
    }
  }

  const RegularMatroid& matroid() const { return *m_; }
  const SignaturePair& signatures() const { return pair_; }
  bool injective() const { return injective_; }
  const SignVector& vector_of(EdgeSet b) const { return vectors_.at(m_->basis_index(b)); }
  const MatroidClass& class_of_basis(EdgeSet b) const { return classes_.at(m_->basis_index(b)); }

  EdgeSet act(const MatroidClass& cls, EdgeSet b) const {
    const auto& base = vector_of(b);
    std::vector<BigInt> sum(cls.rep);
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += base[j];
    auto it = by_class_.find(m_->class_of(std::move(sum)));
    if (it == by_class_.end()) throw InvariantViolation("no basis carries this class");
    return it->second;
  }
  EdgeSet act_element(std::size_t f, EdgeSet b) const { return act(m_->unit_class(f), b); }

 private:
  const RegularMatroid* m_;
  SignaturePair pair_;
  std::vector<SignVector> vectors_;
  std::vector<MatroidClass> classes_;
  std::map<MatroidClass, EdgeSet> by_class_;
  bool injective_ = true;
};

/* Matrix-tree count, distinct basis classes, and freeness/transitivity through element generators. */
inline CheckReport verify_bby_torsor(const RegularMatroid& m, const SignaturePair& p, const std::string& instance = {}) {
  CheckReport report;
  report.record("signatures-acyclic", is_acyclic(p), instance);
  report.record("group-order", m.group_order() == m.bases().size(), instance,
                "order " + m.group_order().str() + " bases " + std::to_string(m.bases().size()));
  BbyAction a(m, p);
  report.record("distinct-classes", a.injective(), instance);
  if (!a.injective()) return report;
  std::vector<MatroidClass> classes;
  for (EdgeSet b : m.bases()) classes.push_back(a.class_of_basis(b));
  for (EdgeSet b : m.bases()) {
    std::map<EdgeSet, int> hits;
    for (const auto& c : classes) ++hits[a.act(c, b)];
    bool bijective = hits.size() == m.bases().size();
    std::string where = "basis";
    for (const auto& l : m.names(b)) where += " " + l;
    report.record("free-transitive", bijective, instance, where);
    report.record("identity", a.act(m.class_of(std::vector<int>(m.size(), 0)), b) == b, instance);
    for (std::size_t e = 0; e < m.size(); ++e) {
      std::vector<BigInt> two(m.size(), 0);
      two[e] = 2;
      report.record("compatibility", a.act(m.class_of(two), b) == a.act_element(e, a.act_element(e, b)), instance);
    }
  }
  return report;
}

/* Context handed to an optional extra consistency condition. */
struct MatroidConsistencyContext {
  const RegularMatroid& matroid;
  const SignaturePair& signatures;
  const BbyAction& action;
  EdgeSet basis, image;
  std::size_t f;
};

using ExtraCondition = std::function<void(const MatroidConsistencyContext&, CheckReport&)>;

/*
 * Contraction and deletion consistency of a BBY variant: for each basis B,
 * element f and B' the image of B under [f], contracting a shared element
 * other than f, or deleting an element in neither basis and not f, commutes
 * with the action on the minor under induced signatures.
 */
inline CheckReport verify_matroid_consistency(const RegularMatroid& m, const SignaturePair& base, MatroidVariant variant,
                                              const std::string& instance = {}, const ExtraCondition& extra = {}) {
  CheckReport report;
  SignaturePair p = variant_signatures(base, variant);
  BbyAction a(m, p);
  std::size_t n = m.size();
  struct Minor {
    std::unique_ptr<RegularMatroid> matroid;
    std::unique_ptr<BbyAction> action;
    bool usable = false;
  };
  std::vector<Minor> contracted(n), deleted(n);
  auto prepare = [&](std::vector<Minor>& cache, std::size_t e, bool contract) -> Minor& {
    Minor& mm = cache[e];
    if (mm.matroid) return mm;
    mm.matroid = std::make_unique<RegularMatroid>(contract ? m.contraction(e) : m.deletion(e));
    SignaturePair induced = contract ? induced_contraction(p, *mm.matroid, e) : induced_deletion(p, *mm.matroid, e);
    mm.usable = is_acyclic(induced);
    report.record("induced-acyclic", mm.usable, instance, (contract ? "contract " : "delete ") + m.labels()[e]);
    if (mm.usable) mm.action = std::make_unique<BbyAction>(*mm.matroid, std::move(induced));
    return mm;
  };
  auto shrink = [](EdgeSet s, std::size_t e) {
    EdgeSet out;
    for (std::size_t j : s.elements())
      if (j != e) out.insert(j < e ? j : j - 1);
    return out;
  };
  auto name = [&](EdgeSet s) {
    std::string out = "{";
    for (const auto& l : m.names(s)) out += (out.size() > 1 ? "," : "") + l;
    return out + "}";
  };
  for (EdgeSet b : m.bases())
    for (std::size_t f = 0; f < n; ++f) {
      EdgeSet image = a.act_element(f, b);
      for (std::size_t e = 0; e < n; ++e) {
        if (e == f) continue;
        std::string detail = "variant " + to_string(variant) + " B=" + name(b) + " f=" + m.labels()[f] + " e=" +
                             m.labels()[e] + " B'=" + name(image);
        if (b.contains(e) && image.contains(e)) {
          Minor& mm = prepare(contracted, e, true);
          if (!mm.usable) continue;
          EdgeSet got = mm.action->act_element(f < e ? f : f - 1, shrink(b, e));
          report.record("contraction", got == shrink(image, e), instance, detail);
        } else if (!b.contains(e) && !image.contains(e)) {
          Minor& mm = prepare(deleted, e, false);
          if (!mm.usable) continue;
          EdgeSet got = mm.action->act_element(f < e ? f : f - 1, shrink(b, e));
          report.record("deletion", got == shrink(image, e), instance, detail);
        }
      }
      if (extra) extra(MatroidConsistencyContext{m, p, a, b, image, f}, report);
    }
  report.tally("contraction");
  report.tally("deletion");
  return report;
}

struct MatroidSearchOptions {
  std::size_t max_graph_edges = 5;
  std::size_t max_ground_set = 10;
  std::size_t random_signatures = 2;
  std::uint64_t seed = 1;
};

struct MatroidInstance {
  std::string name;
  RegularMatroid matroid;
};

/* Graphic matroids of connected multigraphs up to the edge bound, then M*(K3,3) and R10 when they fit. */
inline std::vector<MatroidInstance> matroid_search_space(const MatroidSearchOptions& o) {
  std::vector<MatroidInstance> out;
  for (const auto& g : enumerate_multigraphs(std::min(o.max_graph_edges, o.max_ground_set))) {
    std::string name = "graphic";
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.ends(e);
      name += " " + g.vertex_id(a) + "-" + g.vertex_id(b);
    }
    out.push_back({name, RegularMatroid::from_graph(g)});
  }
  if (o.max_ground_set >= 9) out.push_back({"cographic K3,3", cographic_k33()});
  if (o.max_ground_set >= 10) out.push_back({"R10", r10()});
  return out;
}

/* BBY torsor and variant consistency on one instance; functional signatures come from a stream keyed by (seed, index). */
inline CheckReport conjecture_search_instance(const MatroidInstance& inst, std::size_t index, const MatroidSearchOptions& o,
                                              const ExtraCondition& extra = {}) {
  CheckReport report;
  std::seed_seq seq{o.seed, static_cast<std::uint64_t>(index)};
  std::mt19937_64 rng(seq);
  std::vector<SignaturePair> pairs{default_signatures(inst.matroid)};
  for (std::size_t k = 0; k < o.random_signatures; ++k) pairs.push_back(functional_signatures(inst.matroid, rng));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    std::string label = inst.name + (k == 0 ? " default" : " functional#" + std::to_string(k));
    report.merge(verify_bby_torsor(inst.matroid, pairs[k], label));
    for (MatroidVariant v : kAllMatroidVariants) report.merge(verify_matroid_consistency(inst.matroid, pairs[k], v, label, extra));
  }
  return report;
}

/*
 * Consistency sweep for BBY and its structure variants over the search space,
 * with default signatures and seeded functional signatures. Violations are
 * findings about open conjectures, not failures.
 */
inline CheckReport conjecture_search(const MatroidSearchOptions& o, const ExtraCondition& extra = {}) {
  CheckReport report;
  auto space = matroid_search_space(o);
  for (std::size_t i = 0; i < space.size(); ++i) report.merge(conjecture_search_instance(space[i], i, o, extra));
  return report;
}

}  // namespace sandtorsor
