#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "enumerate.hpp"
#include "io.hpp"
#include "matroid.hpp"
#include "moves.hpp"
#include "rotor_checks.hpp"
#include "torsor.hpp"

namespace sandtorsor {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "sandpile-report/1";

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"torsor", "sink-invariance", "consistency", "moves",
                                              "unicycle", "telescope", "matroid"};
  return names;
}

struct RunConfig {
  std::string suite;
  std::size_t max_edges = 6;
  std::size_t max_ground_set = 10;
  std::size_t matroid_graph_edges = 5;
  std::size_t random_signatures = 2;
  std::vector<Variant> variants{Variant::r};
  bool include_nonplanar = false;
  std::size_t nonplanar_max_edges = 4;
  bool nonadjacent = false;
  bool leaf_swap = false;
  bool trace = false;
  std::size_t telescope_max_n = 2;
  std::size_t telescope_max_k = 2;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::string report_path;
  std::size_t violation_limit = 200;

  void validate() const {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
      throw InputError("unknown suite '" + suite + "'");
    if (max_edges == 0 || max_edges > 10) throw InputError("--max-edges must be in 1..10");
    if (nonplanar_max_edges == 0 || nonplanar_max_edges > 8) throw InputError("--nonplanar-max-edges must be in 1..8");
    if (max_ground_set == 0 || max_ground_set > 20) throw InputError("--max-ground-set must be in 1..20");
    if (matroid_graph_edges == 0) throw InputError("--matroid-graph-edges must be positive");
    if (variants.empty()) throw InputError("no variant selected");
    if (workers == 0) throw InputError("worker count must be positive");
    if (telescope_max_k == 0 && telescope_max_n == 0) throw InputError("telescope bounds leave no instance");
  }
};

inline Json config_to_json(const RunConfig& c) {
  Json variants = Json::array();
  for (Variant v : c.variants) variants.push_back(to_string(v));
  return {{"includeNonplanar", c.include_nonplanar},
          {"leafSwap", c.leaf_swap},
          {"maxEdges", c.max_edges},
          {"maxGroundSet", c.max_ground_set},
          {"matroidGraphEdges", c.matroid_graph_edges},
          {"nonadjacent", c.nonadjacent},
          {"nonplanarMaxEdges", c.nonplanar_max_edges},
          {"randomSignatures", c.random_signatures},
          {"suite", c.suite},
          {"telescopeMaxK", c.telescope_max_k},
          {"telescopeMaxN", c.telescope_max_n},
          {"trace", c.trace},
          {"variants", variants},
          {"violationLimit", c.violation_limit}};
}

/* SANDPILE_WORKERS overrides the requested count. */
inline std::size_t resolve_workers(std::size_t requested) {
  if (const char* env = std::getenv("SANDPILE_WORKERS"); env && *env) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n <= 0) throw InputError("SANDPILE_WORKERS must be a positive integer");
    return static_cast<std::size_t>(n);
  }
  return requested;
}

/* Run fn(i) for i < count on a pool of threads; results come back in index order. */
template <class Fn>
std::vector<CheckReport> run_pool(std::size_t count, std::size_t workers, Fn&& fn) {
  std::vector<CheckReport> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::size_t n = std::max<std::size_t>(1, std::min(workers, count));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

/* Merge per-instance reports in instance-key order. */
inline CheckReport merge_sorted(std::vector<std::pair<std::string, CheckReport>> parts) {
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CheckReport out;
  for (const auto& [key, r] : parts) out.merge(r);
  return out;
}

struct SuiteOutcome {
  std::string suite;
  CheckReport checked;
  CheckReport findings;
  std::map<std::string, std::size_t> counters;
  bool asserted = true;
  double wall_seconds = 0;

  bool passed() const { return !asserted || checked.clean(); }
};

namespace detail {

template <class Detail>
void check(CheckReport& r, const std::string& name, bool ok, const std::string& instance, Detail&& detail) {
  if (ok) r.tally(name).record(true);
  else r.record(name, false, instance, detail());
}

inline void skip(CheckReport& r, const std::string& name) { r.tally(name).skipped = true; }

inline void prefix_instances(CheckReport& r, const std::string& prefix) {
  for (auto& v : r.violations) v.instance = prefix + v.instance;
}

struct Job {
  std::string key;
  std::function<CheckReport()> run;
};

inline std::vector<RibbonGraph> plane_graphs(std::size_t max_edges) { return enumerate_plane_graphs(max_edges); }

inline CheckReport run_jobs(const std::vector<Job>& jobs, std::size_t workers) {
  auto reports = run_pool(jobs.size(), workers, [&](std::size_t i) { return jobs[i].run(); });
  std::vector<std::pair<std::string, CheckReport>> parts;
  for (std::size_t i = 0; i < jobs.size(); ++i) parts.push_back({jobs[i].key, std::move(reports[i])});
  return merge_sorted(std::move(parts));
}

inline CheckReport torsor_instance(const RibbonGraph& rg, Variant v) {
  auto r = verify_torsor_axioms(TorsorAction(rg, v));
  prefix_instances(r, "variant " + to_string(v) + ": ");
  return r;
}

inline std::string graph_key(const Multigraph& g) {
  std::string out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    out += (e ? " " : "") + g.edge_id(e) + "=" + g.vertex_id(a) + "-" + g.vertex_id(b);
  }
  return out;
}

inline CheckReport matrix_tree_instance(const Multigraph& g) {
  CheckReport r;
  BigInt order = group_structure(g).order();
  std::size_t trees = spanning_trees(g).size();
  check(r, "matrix-tree", order == trees, graph_key(g),
        [&] { return "group order " + order.str() + " spanning trees " + std::to_string(trees); });
  return r;
}

inline CheckReport moves_instance(const RibbonGraph& rg, bool leaf_swap) {
  const auto& g = rg.graph();
  CheckReport r;
  std::string inst = to_string(rg);
  auto trees = spanning_trees(g);
  for (SpanningTree a : trees)
    for (SpanningTree b : trees) {
      if (a == b) continue;
      auto where = [&] { return "from " + to_string(g, a) + " to " + to_string(g, b); };
      auto seq = find_source_turn_path(rg, a, b);
      check(r, "source-turn-path", seq.has_value(), inst, where);
      if (seq) {
        check(r, "replay", replay_moves(rg, *seq), inst, where);
        bool classified = std::all_of(seq->moves.begin(), seq->moves.end(), [&](const MovePair& m) {
          auto p = classify_pair(rg, m.tree, m.c, m.s);
          return p && p->kind == MoveKind::source_turn && p->g == m.g && p->f == m.f;
        });
        check(r, "move-classification", classified, inst, where);
      }
      if (leaf_swap) {
        bool ok = false;
        try {
          ok = is_leaf_swap_sequence(g, leaf_swap_path(g, a, b));
        } catch (const InvariantViolation&) {
        }
        check(r, "leaf-swap-path", ok, inst, where);
      }
    }
  for (const char* name : {"source-turn-path", "replay", "move-classification"}) r.tally(name);
  if (leaf_swap) r.tally("leaf-swap-path");
  return r;
}

inline CheckReport unicycle_instance(const RibbonGraph& rg, bool trace) {
  const auto& g = rg.graph();
  CheckReport r;
  std::string inst = to_string(rg);
  std::size_t m = g.edge_count();
  bool plane = is_plane(rg);
  bool all_reverse = true;
  for (const auto& u : all_unicycles(g)) {
    auto where = [&] {
      std::string s = "chip " + g.vertex_id(u.chip) + " rotors";
      for (std::size_t v = 0; v < g.vertex_count(); ++v) s += " " + g.vertex_id(v) + ":" + g.edge_id(u.rotor[v]);
      return s;
    };
    auto spin = full_spin(rg, u);
    check(r, "period", spin.first_return == 2 * m, inst, [&] { return where() + " period " + std::to_string(spin.first_return); });
    check(r, "darts-once", spin.darts_once, inst, where);
    check(r, "full-turns", spin.full_turns, inst, where);
    bool reverses = steps_to_reversal(rg, u).has_value();
    all_reverse = all_reverse && reverses;
    if (plane) {
      auto bad = side_crossing_violations(rg, u);
      check(r, "side-crossing", bad.empty(), inst, [&] { return where() + ": " + bad.front(); });
    }
  }
  check(r, "reversal-iff-plane", all_reverse == plane, inst,
        [&] { return std::string(plane ? "plane" : "non-plane") + (all_reverse ? ", every cycle reverses" : ", some cycle never reverses"); });
  if (plane) {
    for (SpanningTree t : spanning_trees(g))
      for (std::size_t c = 0; c < g.vertex_count(); ++c)
        for (std::size_t s = 0; s < g.vertex_count(); ++s) {
          if (c == s || g.edges_between(c, s).empty()) continue;
          auto rep = check_cycle_reversal(rg, t, c, s);
          check(r, "route-lemmas", rep.violations.empty(), inst, [&] {
            std::string d = "T=" + to_string(g, t) + " c=" + g.vertex_id(c) + " s=" + g.vertex_id(s) + ": " + rep.violations.front();
            if (trace) d += " trace " + trace_to_json(g, route_chip(rg, t, c, s, TraceMode::steps).trace).dump();
            return d;
          });
        }
    r.tally("route-lemmas");
    r.tally("side-crossing");
  }
  return r;
}

struct CornerOutcome {
  CheckReport report;
  std::size_t non_telescope_failures = 0;
};

inline TelescopeEquivalence telescope_corner_check(const RibbonGraph& rg, const CornerLabels& k, const std::string& inst,
                                                   CornerOutcome& out) {
  const auto& g = rg.graph();
  auto eq = verify_telescope_equivalence(rg, k);
  std::string where = "corner c=" + g.vertex_id(k.c) + " g=" + g.edge_id(k.g) + " f=" + g.edge_id(k.f);
  check(out.report, "biconditional", eq.holds(), inst, [&] {
    return where + (eq.telescope ? " telescope" : " not a telescope") +
           (eq.complements_are_trees ? ", every complement a tree" : ", some complement not a tree");
  });
  check(out.report, "criterion-agreement", eq.criterion_mismatches.empty(), inst,
        [&] { return where + " tree " + eq.criterion_mismatches.front(); });
  if (!eq.telescope && !eq.complements_are_trees) ++out.non_telescope_failures;
  return eq;
}

}  // namespace detail

inline std::string telescope_name(const TelescopeSpec& spec) {
  std::string out = "tele{" + std::to_string(spec.n) + "}(";
  for (std::size_t i = 0; i < spec.ks.size(); ++i) out += (i ? "," : "") + std::to_string(spec.ks[i]);
  return out + ")";
}

inline std::vector<TelescopeSpec> telescope_specs_bounded(std::size_t max_n, std::size_t max_k) {
  std::vector<TelescopeSpec> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    std::vector<std::size_t> ks(n + 1, 0);
    for (;;) {
      out.push_back({n, ks});
      std::size_t i = 0;
      while (i <= n && ks[i] == max_k) ks[i++] = 0;
      if (i > n) break;
      ++ks[i];
    }
  }
  return out;
}

inline SuiteOutcome run_suite(const RunConfig& cfg) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  std::size_t workers = resolve_workers(cfg.workers);
  SuiteOutcome out;
  out.suite = cfg.suite;
  using detail::Job;
  std::vector<Job> jobs, finding_jobs;

  if (cfg.suite == "torsor") {
    auto graphs = enumerate_multigraphs(cfg.max_edges);
    for (const auto& g : graphs) jobs.push_back({"0 " + detail::graph_key(g), [&g] { return detail::matrix_tree_instance(g); }});
    out.counters["multigraphs"] = graphs.size();
    auto plane = detail::plane_graphs(cfg.max_edges);
    for (const auto& rg : plane)
      for (Variant v : cfg.variants)
        jobs.push_back({"1 " + to_string(rg) + " " + to_string(v), [&rg, v] { return detail::torsor_instance(rg, v); }});
    out.counters["plane ribbon graphs"] = plane.size();
    out.checked = detail::run_jobs(jobs, workers);
  } else if (cfg.suite == "sink-invariance") {
    auto plane = detail::plane_graphs(cfg.max_edges);
    for (const auto& rg : plane) jobs.push_back({to_string(rg), [&rg] { return verify_sink_invariance(rg); }});
    out.counters["plane ribbon graphs"] = plane.size();
    std::vector<RibbonGraph> other;
    if (cfg.include_nonplanar) {
      for (auto& rg : enumerate_ribbon_graphs(cfg.nonplanar_max_edges, false))
        if (!is_plane(rg)) other.push_back(std::move(rg));
      for (const auto& rg : other) finding_jobs.push_back({to_string(rg), [&rg] { return verify_sink_invariance(rg); }});
      out.counters["non-plane ribbon graphs"] = other.size();
    } else {
      detail::skip(out.findings, "sink-invariance");
    }
    out.checked = detail::run_jobs(jobs, workers);
    if (!finding_jobs.empty()) out.findings = detail::run_jobs(finding_jobs, workers);
    if (cfg.include_nonplanar) {
      std::set<std::string> flagged;
      for (const auto& v : out.findings.violations) flagged.insert(v.instance);
      out.counters["non-plane graphs with a disagreement"] = flagged.size();
    }
  } else if (cfg.suite == "consistency") {
    auto plane = detail::plane_graphs(cfg.max_edges);
    for (const auto& rg : plane)
      for (Variant v : cfg.variants) {
        std::string key = to_string(rg) + " " + to_string(v);
        jobs.push_back({key, [&rg, v] {
                          auto r = verify_consistency(v, rg);
                          detail::prefix_instances(r, "variant " + to_string(v) + ": ");
                          return r;
                        }});
        if (cfg.nonadjacent)
          finding_jobs.push_back({key, [&rg, v] {
                                    auto r = verify_consistency(v, rg, {true});
                                    detail::prefix_instances(r, "variant " + to_string(v) + ", non-adjacent: ");
                                    return r;
                                  }});
      }
    out.counters["plane ribbon graphs"] = plane.size();
    out.checked = detail::run_jobs(jobs, workers);
    if (cfg.nonadjacent) out.findings = detail::run_jobs(finding_jobs, workers);
    else detail::skip(out.findings, "non-adjacent");
  } else if (cfg.suite == "moves") {
    std::vector<RibbonGraph> graphs;
    for (auto& rg : detail::plane_graphs(cfg.max_edges))
      if (is_two_connected(rg.graph())) graphs.push_back(std::move(rg));
    for (const auto& rg : graphs)
      jobs.push_back({to_string(rg), [&rg, &cfg] { return detail::moves_instance(rg, cfg.leaf_swap); }});
    out.counters["2-connected plane ribbon graphs"] = graphs.size();
    out.checked = detail::run_jobs(jobs, workers);
    if (!cfg.leaf_swap) detail::skip(out.checked, "leaf-swap-path");
  } else if (cfg.suite == "unicycle") {
    auto all = enumerate_ribbon_graphs(cfg.max_edges, false);
    for (const auto& rg : all) jobs.push_back({to_string(rg), [&rg, &cfg] { return detail::unicycle_instance(rg, cfg.trace); }});
    out.counters["ribbon graphs"] = all.size();
    out.counters["plane ribbon graphs"] =
        static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [](const RibbonGraph& rg) { return is_plane(rg); }));
    out.checked = detail::run_jobs(jobs, workers);
  } else if (cfg.suite == "telescope") {
    auto specs = telescope_specs_bounded(cfg.telescope_max_n, cfg.telescope_max_k);
    std::vector<RibbonGraph> teles;
    for (const auto& s : specs) teles.push_back(telescope(s));
    std::vector<RibbonGraph> graphs;
    for (auto& rg : detail::plane_graphs(cfg.max_edges))
      if (is_two_connected(rg.graph()) && rg.graph().vertex_count() > 1) graphs.push_back(std::move(rg));
    std::vector<detail::CornerOutcome> results(specs.size() + graphs.size());
    run_pool(results.size(), workers, [&](std::size_t i) {
      if (i < specs.size()) {
        const auto& rg = teles[i];
        std::string inst = telescope_name(specs[i]);
        auto eq = detail::telescope_corner_check(rg, telescope_corner(rg), inst, results[i]);
        detail::check(results[i].report, "telescope-recognized", eq.telescope.has_value(), inst, [] { return "not recognized"; });
      } else {
        const auto& rg = graphs[i - specs.size()];
        const auto& g = rg.graph();
        std::string inst = to_string(rg);
        for (std::size_t c = 0; c < g.vertex_count(); ++c)
          for (std::size_t e : rg.rotation(c)) {
            std::size_t next = rg.next_edge(c, e);
            if (next != e && g.other_end(e, c) != c && g.other_end(next, c) != c)
              detail::telescope_corner_check(rg, corner_at(rg, c, e), inst, results[i]);
          }
      }
      return CheckReport{};
    });
    std::vector<std::pair<std::string, CheckReport>> parts;
    std::size_t witnesses = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      parts.push_back({(i < specs.size() ? "0 " + telescope_name(specs[i]) : "1 " + to_string(graphs[i - specs.size()])),
                       results[i].report});
      if (i >= specs.size()) witnesses += results[i].non_telescope_failures;
    }
    out.checked = merge_sorted(std::move(parts));
    out.counters["telescopes"] = specs.size();
    out.counters["2-connected plane ribbon graphs"] = graphs.size();
    out.counters["non-telescope corners with a non-tree complement"] = witnesses;
  } else if (cfg.suite == "matroid") {
    out.asserted = false;
    MatroidSearchOptions o{cfg.matroid_graph_edges, cfg.max_ground_set, cfg.random_signatures, cfg.seed};
    auto space = matroid_search_space(o);
    auto reports = run_pool(space.size(), workers, [&](std::size_t i) { return conjecture_search_instance(space[i], i, o); });
    std::vector<std::pair<std::string, CheckReport>> parts;
    for (std::size_t i = 0; i < space.size(); ++i) parts.push_back({space[i].name, std::move(reports[i])});
    out.findings = merge_sorted(std::move(parts));
    out.counters["matroids"] = space.size();
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline Json report_to_json(const RunConfig& cfg, const SuiteOutcome& o) {
  auto section = [&](const CheckReport& r) {
    Json tallies = Json::array();
    for (const auto& t : r.tallies) tallies.push_back(tally_to_json(t));
    return Json{{"tallies", tallies},
                {"violationCount", r.violation_count()},
                {"violations", violations_to_json(r.violations, cfg.violation_limit)},
                {"violationsTruncated", r.violations.size() > cfg.violation_limit}};
  };
  Json checked = section(o.checked);
  Json findings = section(o.findings);
  std::string status = !o.asserted ? (o.findings.clean() ? "no-findings" : "findings")
                                   : (o.checked.clean() ? "passed" : "violated");
  return {{"asserted", o.asserted},
          {"checked", checked},
          {"config", config_to_json(cfg)},
          {"counters", o.counters},
          {"findings", findings},
          {"schema", kReportSchema},
          {"seed", cfg.seed},
          {"status", status},
          {"suite", o.suite},
          {"tool", {{"name", "sandpile"}, {"version", kToolVersion}}},
          {"wallTimeSeconds", o.wall_seconds}};
}

/* Structural check of a report against the schema; returns the first problem found. */
inline std::optional<std::string> report_schema_problem(const Json& j) {
  auto need = [&](const Json& obj, const char* key, Json::value_t type) -> std::optional<std::string> {
    if (!obj.is_object() || !obj.contains(key)) return std::string("missing ") + key;
    const Json& v = obj.at(key);
    bool ok = v.type() == type || (type == Json::value_t::number_unsigned && v.is_number_integer()) ||
              (type == Json::value_t::number_float && v.is_number());
    if (!ok) return std::string("wrong type for ") + key;
    return std::nullopt;
  };
  using T = Json::value_t;
  for (auto [key, type] : std::initializer_list<std::pair<const char*, T>>{
           {"schema", T::string}, {"suite", T::string}, {"status", T::string}, {"asserted", T::boolean}, {"config", T::object},
           {"seed", T::number_unsigned}, {"counters", T::object}, {"checked", T::object}, {"findings", T::object},
           {"tool", T::object}, {"wallTimeSeconds", T::number_float}})
    if (auto p = need(j, key, type)) return p;
  if (j.at("schema") != kReportSchema) return "unknown schema " + j.at("schema").dump();
  for (const char* sec : {"checked", "findings"}) {
    const Json& s = j.at(sec);
    for (auto [key, type] : std::initializer_list<std::pair<const char*, T>>{
             {"tallies", T::array}, {"violations", T::array}, {"violationCount", T::number_unsigned}, {"violationsTruncated", T::boolean}})
      if (auto p = need(s, key, type)) return std::string(sec) + ": " + *p;
    for (const auto& t : s.at("tallies"))
      for (auto [key, type] : std::initializer_list<std::pair<const char*, T>>{
               {"name", T::string}, {"instances", T::number_unsigned}, {"passes", T::number_unsigned},
               {"violations", T::number_unsigned}, {"status", T::string}})
        if (auto p = need(t, key, type)) return std::string(sec) + " tally: " + *p;
    for (const auto& v : s.at("violations"))
      for (const char* key : {"check", "instance", "detail"})
        if (auto p = need(v, key, T::string)) return std::string(sec) + " violation: " + *p;
  }
  return std::nullopt;
}

}  // namespace sandtorsor
