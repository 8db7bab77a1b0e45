#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "matroid.hpp"
#include "report.hpp"
#include "rotor.hpp"

namespace sandtorsor {

using Json = nlohmann::json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

namespace detail {

template <class T>
T json_get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("malformed ") + what);
  }
}

inline const Json& json_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

// {"vertices":[...], "edges":[{"id":..., "ends":[u,v]}]}
inline Multigraph graph_from_json(const Json& j) {
  auto vertices = detail::json_get<std::vector<std::string>>(detail::json_field(j, "vertices"), "vertex list");
  std::vector<EdgeSpec> edges;
  for (const auto& e : detail::json_field(j, "edges")) {
    auto ends = detail::json_get<std::vector<std::string>>(detail::json_field(e, "ends"), "edge ends");
    if (ends.size() != 2) throw InputError("an edge needs exactly two ends");
    edges.push_back({detail::json_get<std::string>(detail::json_field(e, "id"), "edge id"), ends[0], ends[1]});
  }
  return Multigraph(vertices, edges);
}

inline Json graph_to_json(const Multigraph& g) {
  Json edges = Json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    edges.push_back({{"ends", {g.vertex_id(a), g.vertex_id(b)}}, {"id", g.edge_id(e)}});
  }
  return {{"edges", edges}, {"vertices", g.vertex_ids()}};
}

// graph format plus "rotation": {vertex: [edges counterclockwise]}
inline RibbonGraph ribbon_from_json(const Json& j) {
  Multigraph g = graph_from_json(j);
  auto rot = detail::json_get<Rotation>(detail::json_field(j, "rotation"), "rotation");
  return RibbonGraph(std::move(g), rot);
}

inline Json ribbon_to_json(const RibbonGraph& rg) {
  Json j = graph_to_json(rg.graph());
  Json rot = Json::object();
  for (std::size_t v = 0; v < rg.graph().vertex_count(); ++v) {
    Json list = Json::array();
    for (std::size_t e : rg.rotation(v)) list.push_back(rg.graph().edge_id(e));
    rot[rg.graph().vertex_id(v)] = list;
  }
  j["rotation"] = rot;
  return j;
}

// [edge ids] or {"edges":[edge ids]}
inline EdgeSet edge_set_from_json(const Multigraph& g, const Json& j) {
  const Json& list = j.is_object() ? detail::json_field(j, "edges") : j;
  return g.edge_set(detail::json_get<std::vector<std::string>>(list, "edge list"));
}

inline SpanningTree tree_from_json(const Multigraph& g, const Json& j) {
  EdgeSet t = edge_set_from_json(g, j);
  if (!is_spanning_tree(g, t)) throw InputError("edge set is not a spanning tree");
  return t;
}

inline Json edge_set_to_json(const Multigraph& g, EdgeSet s) { return g.edge_names(s); }

// {"vertex": chips, ...}; omitted vertices hold 0
inline Divisor divisor_from_json(const Multigraph& g, const Json& j) {
  return divisor_from_ids(g, detail::json_get<std::map<std::string, Chips>>(j, "divisor"));
}

inline Json divisor_to_json(const Multigraph& g, const Divisor& d) {
  Json j = Json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) j[g.vertex_id(v)] = d[v];
  return j;
}

/* "a-b+2c" style or "a,b" style shorthands are not accepted; divisors on the CLI are JSON objects or vertex - vertex pairs. */
inline Divisor parse_chip_pair(const Multigraph& g, const std::string& chip, const std::string& sink) {
  return Divisor::chip_pair(g.vertex_count(), g.vertex(chip), g.vertex(sink));
}

inline Json trace_to_json(const Multigraph& g, const RouteTrace& trace) {
  Json out = Json::array();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out.push_back({{"chip", g.vertex_id(s.chip)},
                   {"newRotor", g.edge_id(s.new_rotor)},
                   {"rotatedVertex", g.vertex_id(s.rotated_vertex)},
                   {"step", i + 1}});
  }
  return out;
}

// {"labels":[...], "matrix":[[...]]} or {"graph": <graph>, "orientation": {edge: [tail, head]}}
inline RegularMatroid matroid_from_json(const Json& j) {
  if (j.is_object() && j.contains("graph")) {
    Multigraph g = graph_from_json(j.at("graph"));
    if (!j.contains("orientation")) return RegularMatroid::from_graph(g);
    return RegularMatroid::from_graph(g, detail::json_get<Orientation>(j.at("orientation"), "orientation"));
  }
  auto labels = detail::json_get<std::vector<std::string>>(detail::json_field(j, "labels"), "labels");
  auto rows = detail::json_get<std::vector<std::vector<long long>>>(detail::json_field(j, "matrix"), "matrix");
  return RegularMatroid(labels, to_big(rows));
}

inline Json matroid_to_json(const RegularMatroid& m) {
  Json rows = Json::array();
  for (const auto& row : m.matrix()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(static_cast<long long>(x));
    rows.push_back(r);
  }
  return {{"labels", m.labels()}, {"matrix", rows}};
}

// {"circuits":[[+1,0,-1,...],...], "cocircuits":[...]}; "default" selects the minimal-element rule
inline SignaturePair signatures_from_json(const RegularMatroid& m, const Json& j) {
  if (j.is_string() && j.get<std::string>() == "default") return default_signatures(m);
  SignaturePair p{detail::json_get<std::vector<SignVector>>(detail::json_field(j, "circuits"), "circuit signature"),
                  detail::json_get<std::vector<SignVector>>(detail::json_field(j, "cocircuits"), "cocircuit signature")};
  if (!is_signature_for(p.circuits, m.circuits())) throw InputError("circuit signature does not match the matroid");
  if (!is_signature_for(p.cocircuits, m.cocircuits())) throw InputError("cocircuit signature does not match the matroid");
  if (!is_acyclic(p)) throw InputError("signatures are not acyclic");
  return p;
}

inline Json signatures_to_json(const SignaturePair& p) { return {{"circuits", p.circuits}, {"cocircuits", p.cocircuits}}; }

inline Json bigints_to_json(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(static_cast<long long>(x));
  return out;
}

inline std::string ribbon_to_dot(const RibbonGraph& rg) {
  const auto& g = rg.graph();
  std::ostringstream out;
  out << "graph ribbon {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  \"" << g.vertex_id(v) << "\";  // rotation:";
    for (std::size_t e : rg.rotation(v)) out << " " << g.edge_id(e);
    out << "\n";
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.ends(e);
    out << "  \"" << g.vertex_id(a) << "\" -- \"" << g.vertex_id(b) << "\" [label=\"" << g.edge_id(e) << "\", taillabel=\""
        << rg.position(a, e) << "\", headlabel=\"" << rg.position(b, e) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string rotors_to_dot(const Multigraph& g, const RotorConfiguration& rho) {
  std::ostringstream out;
  out << "digraph rotors {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out << "  \"" << g.vertex_id(v) << "\"" << (v == rho.sink ? " [shape=doublecircle]" : "") << ";\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (v == rho.sink || rho.rotor[v] == npos) continue;
    std::size_t e = rho.rotor[v];
    out << "  \"" << g.vertex_id(v) << "\" -> \"" << g.vertex_id(g.other_end(e, v)) << "\" [label=\"" << g.edge_id(e) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

inline Json tally_to_json(const CheckTally& t) {
  return {{"instances", t.instances},
          {"name", t.name},
          {"passes", t.passes},
          {"status", t.skipped ? "skipped" : (t.instances == 0 ? "empty" : "checked")},
          {"violations", t.violations}};
}

inline Json violations_to_json(const std::vector<Violation>& vs, std::size_t limit) {
  Json out = Json::array();
  for (std::size_t i = 0; i < vs.size() && i < limit; ++i)
    out.push_back({{"check", vs[i].check}, {"detail", vs[i].detail}, {"instance", vs[i].instance}});
  return out;
}

}  // namespace sandtorsor
