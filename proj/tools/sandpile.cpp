#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sandtorsor/io.hpp"
#include "sandtorsor/matroid.hpp"
#include "sandtorsor/moves.hpp"
#include "sandtorsor/torsor.hpp"
#include "sandtorsor/verify.hpp"

namespace {

using namespace sandtorsor;

constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InputError("bad count '" + item + "' in '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty count list");
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "'");
    }
  }
  return out;
}

Json tree_list(const Multigraph& g, const std::vector<SpanningTree>& trees) {
  Json out = Json::array();
  for (SpanningTree t : trees) out.push_back(edge_set_to_json(g, t));
  return out;
}

Json move_to_json(const Multigraph& g, const MovePair& m) {
  return {{"chip", g.vertex_id(m.chip())},
          {"enters", g.edge_id(m.reverse() ? m.g : m.f)},
          {"kind", to_string(m.kind)},
          {"leaves", g.edge_id(m.reverse() ? m.f : m.g)},
          {"sink", g.vertex_id(m.sink())},
          {"tree", edge_set_to_json(g, m.result())}};
}

struct Args {
  std::string input, tree, divisor, chip, sink, from, to, basis, element, vector, signatures, ks;
  std::string variant = "r", bby_variant = "bby";
  bool dot = false, trace = false, leaf_swap = false, check = false;
};

int cmd_group(const Args& a) {
  Multigraph g = graph_from_json(read_json_file(a.input));
  auto gs = group_structure(g);
  Json factors = Json::array();
  for (const auto& d : gs.invariant_factors)
    if (d != 1) factors.push_back(static_cast<long long>(d));
  emit({{"invariantFactors", factors},
        {"order", static_cast<long long>(gs.order())},
        {"spanningTrees", spanning_trees(g).size()}});
  return 0;
}

int cmd_trees(const Args& a) {
  Multigraph g = graph_from_json(read_json_file(a.input));
  auto trees = spanning_trees(g);
  emit({{"count", trees.size()}, {"trees", tree_list(g, trees)}});
  return 0;
}

int cmd_genus(const Args& a) {
  RibbonGraph rg = ribbon_from_json(read_json_file(a.input));
  if (a.dot) {
    std::cout << ribbon_to_dot(rg);
    return 0;
  }
  emit({{"edges", rg.graph().edge_count()},
        {"faces", rg.graph().edge_count() == 0 ? 1 : faces(rg).size()},
        {"genus", euler_genus(rg)},
        {"plane", is_plane(rg)},
        {"vertices", rg.graph().vertex_count()}});
  return 0;
}

int cmd_route(const Args& a) {
  RibbonGraph rg = ribbon_from_json(read_json_file(a.input));
  const auto& g = rg.graph();
  Variant v = parse_variant(a.variant);
  RibbonGraph structure = variant_structure(rg, v);
  SpanningTree t = tree_from_json(g, read_json_file(a.tree));
  std::size_t s = g.vertex(a.sink);
  Json out;
  SpanningTree result;
  if (!a.chip.empty()) {
    std::size_t c = g.vertex(a.chip);
    if (c == s) throw InputError("chip and sink coincide");
    bool flip = negates_class(v);
    auto run = route_chip(structure, t, flip ? s : c, flip ? c : s, a.trace ? TraceMode::steps : TraceMode::none);
    result = run.tree;
    if (a.trace) out["trace"] = trace_to_json(g, run.trace);
  } else if (!a.divisor.empty()) {
    Divisor d = divisor_from_json(g, read_json_file(a.divisor));
    if (negates_class(v)) d = -d;
    result = route_divisor(structure, t, d, s);
  } else {
    throw InputError("route needs --chip or --divisor");
  }
  if (a.dot) {
    std::cout << rotors_to_dot(g, tree_to_rotors(g, result, s));
    return 0;
  }
  out["tree"] = edge_set_to_json(g, result);
  emit(out);
  return 0;
}

int cmd_act(const Args& a) {
  RibbonGraph rg = ribbon_from_json(read_json_file(a.input));
  const auto& g = rg.graph();
  TorsorAction act = rotor_routing_action(rg, parse_variant(a.variant));
  SpanningTree t = tree_from_json(g, read_json_file(a.tree));
  Divisor d = divisor_from_json(g, read_json_file(a.divisor));
  if (d.degree() != 0) throw InputError("divisor must have degree 0");
  SpanningTree result = act.act(d, t);
  if (a.dot) {
    std::cout << rotors_to_dot(g, tree_to_rotors(g, result, kClassSink));
    return 0;
  }
  emit({{"class", divisor_to_json(g, class_of(g, d).rep)}, {"tree", edge_set_to_json(g, result)}});
  return 0;
}

int cmd_moves_path(const Args& a) {
  RibbonGraph rg = ribbon_from_json(read_json_file(a.input));
  const auto& g = rg.graph();
  if (!is_plane(rg)) throw InputError("moves need a plane ribbon graph");
  SpanningTree start = tree_from_json(g, read_json_file(a.from));
  SpanningTree goal = tree_from_json(g, read_json_file(a.to));
  if (a.leaf_swap) {
    auto path = leaf_swap_path(g, start, goal);
    emit({{"length", path.size() - 1}, {"mode", "leaf-swap"}, {"trees", tree_list(g, path)}});
    return 0;
  }
  MoveSequence seq = source_turn_path(rg, start, goal);
  if (!replay_moves(rg, seq)) throw InvariantViolation("source-turn sequence does not replay");
  Json moves = Json::array();
  for (const auto& m : seq.moves) moves.push_back(move_to_json(g, m));
  emit({{"length", seq.moves.size()}, {"mode", "source-turn"}, {"moves", moves}, {"start", edge_set_to_json(g, start)}});
  return 0;
}

int cmd_telescope(const Args& a) {
  auto counts = parse_counts(a.ks);
  TelescopeSpec spec{counts.size() - 1, counts};
  RibbonGraph tele = telescope(spec);
  if (a.dot) {
    std::cout << ribbon_to_dot(tele);
    return 0;
  }
  Json out{{"name", telescope_name(spec)}, {"graph", ribbon_to_json(tele)}};
  if (a.check) {
    auto eq = verify_telescope_equivalence(tele);
    out["complementsAreTrees"] = eq.complements_are_trees;
    out["singleStepTrees"] = eq.single_step_trees;
    out["criterionMismatches"] = eq.criterion_mismatches;
    if (!eq.holds() || !eq.criterion_mismatches.empty()) {
      emit(out);
      return kExitInvariant;
    }
  }
  emit(out);
  return 0;
}

MatroidVariant parse_matroid_variant(const std::string& s) {
  for (MatroidVariant v : kAllMatroidVariants)
    if (to_string(v) == s) return v;
  throw InputError("unknown matroid variant '" + s + "'");
}

int cmd_bby_act(const Args& a) {
  RegularMatroid m = matroid_from_json(read_json_file(a.input));
  SignaturePair base = a.signatures.empty() ? default_signatures(m) : signatures_from_json(m, read_json_file(a.signatures));
  SignaturePair p = variant_signatures(base, parse_matroid_variant(a.bby_variant));
  BbyAction act(m, p);
  if (!act.injective()) throw InvariantViolation("BBY vectors of distinct bases share a class");
  Json basis_json = read_json_file(a.basis);
  auto labels = detail::json_get<std::vector<std::string>>(basis_json.is_object() ? detail::json_field(basis_json, "basis") : basis_json,
                                                           "basis");
  EdgeSet b = m.element_set(labels);
  if (!m.is_basis(b)) throw InputError("element set is not a basis");
  std::vector<BigInt> shift(m.size(), 0);
  if (!a.element.empty()) shift[m.element(a.element)] = 1;
  else if (!a.vector.empty()) {
    auto v = parse_ints(a.vector);
    if (v.size() != m.size()) throw InputError("vector length does not match the ground set");
    for (std::size_t i = 0; i < v.size(); ++i) shift[i] = v[i];
  } else {
    throw InputError("bby act needs --element or --vector");
  }
  MatroidClass cls = m.class_of(shift);
  EdgeSet result = act.act(cls, b);
  emit({{"basis", m.names(b)},
        {"basisVector", act.vector_of(b)},
        {"result", m.names(result)},
        {"resultVector", act.vector_of(result)},
        {"shift", bigints_to_json(shift)},
        {"variant", to_string(parse_matroid_variant(a.bby_variant))}});
  return 0;
}

int cmd_verify(RunConfig cfg, const std::vector<std::string>& variants) {
  if (!variants.empty()) {
    cfg.variants.clear();
    for (const auto& v : variants) {
      if (v == "all") cfg.variants.assign(std::begin(kAllVariants), std::end(kAllVariants));
      else cfg.variants.push_back(parse_variant(v));
    }
  }
  SuiteOutcome outcome = run_suite(cfg);
  Json report = report_to_json(cfg, outcome);
  if (!cfg.report_path.empty()) write_text_file(cfg.report_path, report.dump(2) + "\n");
  emit(report);
  return outcome.passed() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sandpile torsors, rotor-routing and BBY on small instances"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Args a;

  auto* group = app.add_subcommand("group", "Sandpile group order and invariant factors");
  group->add_option("graph", a.input, "Graph JSON")->required();

  auto* trees = app.add_subcommand("trees", "List spanning trees");
  trees->add_option("graph", a.input, "Graph JSON")->required();

  auto* genus = app.add_subcommand("genus", "Faces and genus of a ribbon graph");
  genus->add_option("ribbon", a.input, "Ribbon graph JSON")->required();
  genus->add_flag("--dot", a.dot, "Render as DOT");

  auto* rotor = app.add_subcommand("rotor", "Rotor-routing");
  rotor->require_subcommand(1);
  auto* route = rotor->add_subcommand("route", "Route chips from a spanning tree");
  route->add_option("ribbon", a.input, "Ribbon graph JSON")->required();
  route->add_option("--tree", a.tree, "Tree JSON")->required();
  route->add_option("--sink", a.sink, "Sink vertex")->required();
  auto* chip_opt = route->add_option("--chip", a.chip, "Chip vertex");
  route->add_option("--divisor", a.divisor, "Divisor JSON in Div0 of the sink")->excludes(chip_opt);
  route->add_option("--variant", a.variant, "r, rbar, rinv or rbarinv");
  route->add_flag("--trace", a.trace, "Include the step trace");
  route->add_flag("--dot", a.dot, "Render the resulting rotors as DOT");

  auto* act = app.add_subcommand("act", "Rotor-routing torsor action of a divisor class on a tree");
  act->add_option("ribbon", a.input, "Plane ribbon graph JSON")->required();
  act->add_option("--tree", a.tree, "Tree JSON")->required();
  act->add_option("--divisor", a.divisor, "Degree-0 divisor JSON")->required();
  act->add_option("--variant", a.variant, "r, rbar, rinv or rbarinv");
  act->add_flag("--dot", a.dot, "Render the resulting rotors as DOT");

  auto* moves = app.add_subcommand("moves", "Tree move sequences");
  moves->require_subcommand(1);
  auto* path = moves->add_subcommand("path", "Shortest source-turn or leaf-swap path between two trees");
  path->add_option("ribbon", a.input, "2-connected plane ribbon graph JSON")->required();
  path->add_option("--from", a.from, "Start tree JSON")->required();
  path->add_option("--to", a.to, "Goal tree JSON")->required();
  path->add_flag("--leaf-swap", a.leaf_swap, "Use leaf-swap moves");

  auto* tele = app.add_subcommand("telescope", "Build a telescope graph");
  tele->add_option("--ks", a.ks, "Comma-separated multiplicities k0,...,kn")->required();
  tele->add_flag("--check", a.check, "Check the single-step complement biconditional");
  tele->add_flag("--dot", a.dot, "Render as DOT");

  auto* bby = app.add_subcommand("bby", "BBY torsor on regular matroids");
  bby->require_subcommand(1);
  auto* bact = bby->add_subcommand("act", "Act on a basis by a class of Z^E");
  bact->add_option("matroid", a.input, "Matroid JSON")->required();
  bact->add_option("--basis", a.basis, "Basis JSON (array of labels)")->required();
  auto* elem_opt = bact->add_option("--element", a.element, "Act by the class of one element");
  bact->add_option("--vector", a.vector, "Act by the class of a comma-separated integer vector")->excludes(elem_opt);
  bact->add_option("--signatures", a.signatures, "Signature JSON (default: minimal-element rule)");
  bact->add_option("--variant", a.bby_variant, "bby, bby', bby'' or bby'''");

  RunConfig cfg;
  std::vector<std::string> variants;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a report");
  verify->add_option("suite", cfg.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-edges", cfg.max_edges, "Edge bound for graph sweeps");
  verify->add_option("--max-ground-set", cfg.max_ground_set, "Ground-set bound for matroid sweeps");
  verify->add_option("--matroid-graph-edges", cfg.matroid_graph_edges, "Edge bound for graphic matroids");
  verify->add_option("--random-signatures", cfg.random_signatures, "Functional signatures per matroid");
  verify->add_option("--variant", variants, "Variants to check (repeatable, or 'all')");
  verify->add_flag("--include-nonplanar", cfg.include_nonplanar, "Also run non-plane ribbon graphs as findings");
  verify->add_option("--nonplanar-max-edges", cfg.nonplanar_max_edges, "Edge bound for non-plane graphs");
  verify->add_flag("--nonadjacent", cfg.nonadjacent, "Also try non-adjacent chip/sink pairs as findings");
  verify->add_flag("--leaf-swap", cfg.leaf_swap, "Also search leaf-swap paths");
  verify->add_flag("--trace", cfg.trace, "Attach step traces to route violations");
  verify->add_option("--telescope-max-n", cfg.telescope_max_n, "Largest telescope n");
  verify->add_option("--telescope-max-k", cfg.telescope_max_k, "Largest telescope multiplicity");
  verify->add_option("--workers", cfg.workers, "Worker threads (SANDPILE_WORKERS overrides)");
  verify->add_option("--seed", cfg.seed, "Seed for sampled signatures");
  verify->add_option("--report", cfg.report_path, "Write the report to this path");
  verify->add_option("--violation-limit", cfg.violation_limit, "Violations listed per section");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*group) return cmd_group(a);
    if (*trees) return cmd_trees(a);
    if (*genus) return cmd_genus(a);
    if (*route) return cmd_route(a);
    if (*act) return cmd_act(a);
    if (*path) return cmd_moves_path(a);
    if (*tele) return cmd_telescope(a);
    if (*bact) return cmd_bby_act(a);
    if (*verify) return cmd_verify(cfg, variants);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInput;
}
