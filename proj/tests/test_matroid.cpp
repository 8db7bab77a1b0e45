#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "sandtorsor/enumerate.hpp"
#include "sandtorsor/matroid.hpp"

using namespace sandtorsor;

namespace {

Multigraph example_graph() {
  return Multigraph({"a", "b", "c", "d"},
                    {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "d"}, {"e4", "a", "d"}, {"e5", "a", "c"}});
}

std::set<SignVector> as_set(const std::vector<SignVector>& v) { return {v.begin(), v.end()}; }

std::set<std::set<std::string>> named_bases(const RegularMatroid& m) {
  std::set<std::set<std::string>> out;
  for (EdgeSet b : m.bases()) {
    auto names = m.names(b);
    out.insert({names.begin(), names.end()});
  }
  return out;
}

std::set<std::set<std::string>> named_trees(const Multigraph& g) {
  std::set<std::set<std::string>> out;
  for (SpanningTree t : spanning_trees(g)) {
    auto names = g.edge_names(t);
    out.insert({names.begin(), names.end()});
  }
  return out;
}

enum class Verdict { acyclic, cyclic, unknown };

// Box search on both sides of Gordan's alternative: a positive dependency or a strictly separating w.
Verdict acyclicity_by_search(const std::vector<SignVector>& vs) {
  if (vs.empty()) return Verdict::acyclic;
  std::size_t n = vs[0].size(), k = vs.size();
  std::vector<int> lambda(k, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < k && ++lambda[i] == 3) lambda[i++] = 0;
    if (i == k) break;
    bool zero = true;
    for (std::size_t j = 0; j < n && zero; ++j) {
      int sum = 0;
      for (std::size_t r = 0; r < k; ++r) sum += lambda[r] * vs[r][j];
      zero = sum == 0;
    }
    if (zero) return Verdict::cyclic;
  }
  std::vector<int> w(n, -2);
  for (;;) {
    bool separates = std::all_of(vs.begin(), vs.end(), [&](const SignVector& v) {
      int dot = 0;
      for (std::size_t j = 0; j < n; ++j) dot += w[j] * v[j];
      return dot > 0;
    });
    if (separates) return Verdict::acyclic;
    std::size_t j = 0;
    while (j < n && ++w[j] == 3) w[j++] = -2;
    if (j == n) break;
  }
  return Verdict::unknown;
}

// Every choice of one orientation per support.
std::vector<std::vector<SignVector>> all_signatures(const std::vector<SignVector>& family) {
  std::vector<SignVector> reps;
  std::set<std::uint64_t> seen;
  for (const auto& v : family)
    if (seen.insert(support_of(v)).second) reps.push_back(v);
  std::vector<std::vector<SignVector>> out;
  for (std::uint64_t flip = 0; flip < (std::uint64_t{1} << reps.size()); ++flip) {
    auto& choice = out.emplace_back();
    for (std::size_t i = 0; i < reps.size(); ++i) choice.push_back((flip >> i) & 1U ? negated(reps[i]) : reps[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("default signatures reproduce the worked example tables", "[matroid][fixture]") {
  auto m = RegularMatroid::from_graph(example_graph());
  auto p = default_signatures(m);
  CHECK(as_set(p.circuits) == std::set<SignVector>{{1, 1, 0, 0, -1}, {1, 1, 1, -1, 0}, {0, 0, 1, -1, 1}});
  CHECK(as_set(p.cocircuits) == std::set<SignVector>{{1, -1, 0, 0, 0},
                                                     {1, 0, -1, 0, 1},
                                                     {1, 0, 0, 1, 1},
                                                     {0, 1, -1, 0, 1},
                                                     {0, 1, 0, 1, 1},
                                                     {0, 0, 1, 1, 0}});
  CHECK(is_acyclic(p));
}

TEST_CASE("worked example vector, class identity and action", "[matroid][fixture]") {
  auto m = RegularMatroid::from_graph(example_graph());
  BbyAction bby(m, default_signatures(m));
  EdgeSet b = m.element_set({"e2", "e3", "e5"});
  CHECK(bby.vector_of(b) == SignVector{1, 0, 1, 0, 1});
  CHECK(m.class_of(std::vector<int>{1, 0, 2, 0, 1}) == m.class_of(std::vector<int>{1, 1, 0, 1, 1}));
  CHECK(bby.act_element(m.element("e3"), b) == m.element_set({"e1", "e3", "e4"}));
  CHECK(bby.vector_of(m.element_set({"e1", "e3", "e4"})) == SignVector{1, 1, 0, 1, 1});
}

TEST_CASE("acyclicity agrees with a Gordan box search", "[matroid]") {
  std::size_t cyclic = 0;
  for (const auto& g : {example_graph(), complete_graph_k4(true).graph()}) {
    auto m = RegularMatroid::from_graph(g);
    for (const auto* family : {&m.circuits(), &m.cocircuits()}) {
      auto choices = all_signatures(*family);
      if (choices.size() > 256) choices.resize(256);
      for (const auto& s : choices) {
        auto verdict = acyclicity_by_search(s);
        REQUIRE(verdict != Verdict::unknown);
        REQUIRE(is_acyclic(s) == (verdict == Verdict::acyclic));
        if (verdict == Verdict::cyclic) ++cyclic;
      }
    }
  }
  CHECK(cyclic > 0);
}

TEST_CASE("graphic matroid bases are spanning trees", "[matroid]") {
  for (const auto& g : enumerate_multigraphs(5)) {
    auto m = RegularMatroid::from_graph(g);
    REQUIRE(named_bases(m) == named_trees(g));
    REQUIRE(m.group_order() == m.bases().size());
  }
}

TEST_CASE("matroid minors match graph minors", "[matroid]") {
  for (const auto& g : enumerate_multigraphs(4)) {
    auto m = RegularMatroid::from_graph(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (!m.is_coloop(e)) REQUIRE(named_bases(m.deletion(e)) == named_trees(delete_edge(g, e)));
      if (g.vertex_count() > 2) REQUIRE(named_bases(m.contraction(e)) == named_trees(contract(g, e)));
    }
  }
}

TEST_CASE("total unimodularity", "[matroid]") {
  CHECK(is_totally_unimodular(RegularMatroid::from_graph(example_graph()).matrix()));
  CHECK_FALSE(is_totally_unimodular(IntMatrix{{1, 1}, {-1, 1}}));
  CHECK_THROWS_AS(RegularMatroid({"x", "y"}, IntMatrix{{1, 1}, {-1, 1}}), InputError);
  CHECK(r10().size() == 10);
  CHECK(cographic_k33().size() == 9);
}

TEST_CASE("BBY is a torsor with default signatures on small graphs", "[matroid]") {
  for (const auto& g : enumerate_multigraphs(4)) {
    auto m = RegularMatroid::from_graph(g);
    REQUIRE(verify_bby_torsor(m, default_signatures(m)).clean());
  }
}

TEST_CASE("functional signatures are acyclic signatures", "[matroid]") {
  std::mt19937_64 rng(2);
  for (const auto& g : enumerate_multigraphs(4)) {
    auto m = RegularMatroid::from_graph(g);
    auto p = functional_signatures(m, rng);
    REQUIRE(is_signature_for(p.circuits, m.circuits()));
    REQUIRE(is_signature_for(p.cocircuits, m.cocircuits()));
    REQUIRE(is_acyclic(p));
  }
}
