#include "tautring4/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tautring4/descriptor.hpp"

namespace tautring4 {

json graph_to_json(const StableGraph& G) {
  json j;
  j["v"] = G.genus;
  j["e"] = json::array();
  for (auto& e : G.edges) j["e"].push_back({e[0].v, e[1].v});
  j["legs"] = json::object();
  for (auto& [n, h] : G.legs) j["legs"][n] = h.v;
  return j;
}

StableGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("v")) throw std::invalid_argument("graph: expected an object with \"v\"");
  StableGraph G;
  for (auto& g : j.at("v")) G.add_vertex(g.get<int>());
  if (j.contains("e"))
    for (auto& e : j.at("e")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph: edges are [vi,vj] pairs");
      G.add_edge(e[0].get<int>(), e[1].get<int>());
    }
  if (j.contains("legs"))
    for (auto& [n, v] : j.at("legs").items()) G.legs[n] = HalfEdge{v.get<int>(), 0};
  G.validate();
  return G;
}

std::vector<std::string> split_markings(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  std::set<std::string> seen(out.begin(), out.end());
  if (seen.size() != out.size()) throw std::invalid_argument("marking labels must be unique");
  return out;
}

namespace {

json term_to_json(const TautMonomial& m, const Q& c) {
  const StableGraph& G = m.graph();
  json t;
  t["coeff"] = to_fraction(c);
  t["graph"] = graph_to_json(G);
  json psi = json::object(), kappa = json::object();
  for (auto& [n, h] : G.legs)
    if (h.psi) psi[n] = h.psi;
  for (size_t k = 0; k < G.edges.size(); ++k)
    for (int s = 0; s < 2; ++s)
      if (G.edges[k][s].psi) psi["e" + std::to_string(k) + "." + std::to_string(s)] = G.edges[k][s].psi;
  for (int v = 0; v < G.num_vertices(); ++v)
    if (!G.kappa[v].empty()) kappa[std::to_string(v)] = G.kappa[v];
  t["psi"] = psi;
  t["kappa"] = kappa;
  return t;
}

StableGraph decorated_from_json(const json& t) {
  StableGraph G = graph_from_json(t.at("graph"));
  if (t.contains("psi"))
    for (auto& [k, e] : t.at("psi").items()) {
      int x = e.get<int>();
      if (x < 0) throw std::invalid_argument("psi exponent must be >= 0");
      if (G.legs.count(k)) {
        G.legs[k].psi = x;
        continue;
      }
      size_t dot = k.find('.');
      if (k.size() < 4 || k[0] != 'e' || dot == std::string::npos)
        throw std::invalid_argument("psi key '" + k + "' is neither a leg nor e<k>.<side>");
      int edge = std::stoi(k.substr(1, dot - 1)), side = std::stoi(k.substr(dot + 1));
      if (edge < 0 || edge >= G.codim() || (side != 0 && side != 1))
        throw std::invalid_argument("psi key '" + k + "' out of range");
      G.edges[edge][side].psi = x;
    }
  if (t.contains("kappa"))
    for (auto& [k, e] : t.at("kappa").items()) {
      int v = std::stoi(k);
      if (v < 0 || v >= G.num_vertices()) throw std::invalid_argument("kappa vertex out of range");
      std::vector<int> K = e.get<std::vector<int>>();
      for (int a : K)
        if (a < 1) throw std::invalid_argument("kappa indices are >= 1");
      std::sort(K.begin(), K.end());
      G.kappa[v] = K;
    }
  return G;
}

Ambient ambient_of(const StableGraph& G) {
  Ambient A;
  A.g = G.total_genus();
  for (auto& [n, h] : G.legs) A.P.push_back(n);  // map order: sorted
  return A;
}

}  // namespace

json expression_to_json(const TautExpression& e) {
  json j;
  j["ambient"] = {e.ambient().g, e.ambient().P};
  j["terms"] = json::array();
  for (auto& [m, c] : e.terms()) j["terms"].push_back(term_to_json(m, c));
  return j;
}

TautExpression expression_from_json(const json& j) {
  const json* terms = &j;
  Ambient A;
  bool have_ambient = false;
  if (j.is_object()) {
    if (!j.contains("terms")) throw std::invalid_argument("expression: missing \"terms\"");
    terms = &j.at("terms");
    if (j.contains("ambient")) {
      auto& a = j.at("ambient");
      if (!a.is_array() || a.size() != 2) throw std::invalid_argument("ambient is [g, [markings]]");
      A.g = a[0].get<int>();
      A.P = a[1].get<std::vector<std::string>>();
      have_ambient = true;
    }
  }
  if (!terms->is_array()) throw std::invalid_argument("expression: terms must be a list");
  if (!have_ambient) {
    for (auto& t : *terms)
      if (t.contains("graph")) {
        A = ambient_of(graph_from_json(t.at("graph")));
        have_ambient = true;
        break;
      }
    if (!have_ambient) throw std::invalid_argument("expression: no ambient and no graph to infer it from");
  }
  require_stable(A);
  std::vector<std::pair<StableGraph, Q>> loose;
  TautExpression named(A);
  for (auto& t : *terms) {
    Q c = parse_fraction(t.at("coeff").is_string() ? t.at("coeff").get<std::string>() : t.at("coeff").dump());
    if (t.contains("class")) {
      named.add(make_class(A, t.at("class").get<std::string>()), c);
      continue;
    }
    StableGraph G = decorated_from_json(t);
    if (G.total_genus() != A.g) throw std::invalid_argument("term graph has genus " + std::to_string(G.total_genus()));
    std::set<std::string> legs;
    for (auto& [n, h] : G.legs) legs.insert(n);
    if (legs != std::set<std::string>(A.P.begin(), A.P.end()))
      throw std::invalid_argument("term graph legs differ from the ambient markings");
    loose.push_back({G, c});
  }
  TautExpression out = normalize(A, loose);
  if (!named.is_zero()) {
    if (!out.is_zero() && out.degree() != named.degree()) throw std::invalid_argument("expression mixes degrees");
    out.add(named);
  }
  return out;
}

TautExpression read_expression(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return expression_from_json(j);
}

json tensor_to_json(const TensorExpr& t) {
  json j;
  j["factors"] = json::array();
  for (auto& f : t.factors) j["factors"].push_back({f.g, f.P});
  j["terms"] = json::array();
  for (auto& [key, c] : t.terms) {
    json row;
    row["coeff"] = to_fraction(c);
    row["factors"] = json::array();
    for (auto& m : key) {
      json f = term_to_json(m, 1);
      f.erase("coeff");
      row["factors"].push_back(f);
    }
    j["terms"].push_back(row);
  }
  return j;
}

std::string render(const TautExpression& e) {
  if (e.is_zero()) return "0\n";
  std::ostringstream os;
  for (auto& [m, c] : e.terms()) {
    const StableGraph& G = m.graph();
    bool named = m.degree() <= 2 && (G.codim() < 2 || G.bare());
    if (named) {
      BasisClass b = describe(e.ambient(), m);
      os << to_fraction(c / b.scale) << "  " << b.name << "\n";
    } else {
      os << to_fraction(c) << "  " << term_to_json(m, 1).dump() << "\n";
    }
  }
  return os.str();
}

json coords_to_json(const EssentialBasis& B, const std::vector<Q>& coords) {
  json j = json::array();
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) j.push_back({{"class", B.classes[i].name}, {"coeff", to_fraction(coords[i])}});
  return j;
}

json relation_to_json(const Relation& r) {
  json j = expression_to_json(r.expr);
  j["id"] = r.id;
  j["provenance"] = r.provenance;
  return j;
}

}  // namespace tautring4
