#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautring4 {

// One side of a node, or the attachment point of a leg.
// psi is the exponent of the psi class on that half-edge; zero on bare graphs.
struct HalfEdge {
  int v = 0;
  int psi = 0;
  auto operator<=>(const HalfEdge&) const = default;
};

// A P-marked stable graph. Decorations (psi exponents on half-edges and a
// kappa multiset per vertex) live inline so one value type covers both bare
// strata and decorated monomials.
struct StableGraph {
  std::vector<int> genus;
  std::vector<std::vector<int>> kappa;  // sorted kappa indices, one list per vertex
  std::vector<std::array<HalfEdge, 2>> edges;
  std::map<std::string, HalfEdge> legs;

  int num_vertices() const { return static_cast<int>(genus.size()); }
  int codim() const { return static_cast<int>(edges.size()); }
  int valence(int v) const;
  int components() const;
  int component_of(int v, std::vector<int>& comp) const;  // fills comp, returns #components
  int total_genus() const;  // b1 + sum of vertex genera
  bool connected() const { return components() == 1; }
  bool is_stable() const;
  int decoration_degree() const;
  int vertex_degree(int v) const;  // decoration degree carried by vertex v
  int degree() const { return codim() + decoration_degree(); }
  bool bare() const { return decoration_degree() == 0; }
  StableGraph stripped() const;  // same graph, decorations removed

  int add_vertex(int g);
  void add_edge(int a, int b) { edges.push_back({HalfEdge{a, 0}, HalfEdge{b, 0}}); }
  void validate() const;  // structural consistency; throws std::invalid_argument
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CanonicalForm {
  StableGraph graph;         // relabelled into canonical vertex/edge order
  std::vector<int> code;     // total invariant together with the leg names
  long aut = 1;              // automorphisms preserving the decoration
};

// Canonical form of a (possibly decorated, possibly disconnected) graph.
CanonicalForm canonical_form(const StableGraph& G);

// Number of automorphisms of the underlying bare graph.
long aut_count(const StableGraph& G);

bool isomorphic(const StableGraph& a, const StableGraph& b);

// One representative per isomorphism class of connected stable graphs of
// genus g with legs P and exactly codim edges (codim <= 2).
std::vector<StableGraph> enumerate_stable_graphs(int g, const std::vector<std::string>& P, int codim);

// Conventional family name: "Gamma_irr", "Gamma_{a,A}", "F", "E(a,A)", ...
std::string family_name(const StableGraph& G, int g, const std::vector<std::string>& P);

StableGraph j_glue(const StableGraph& G, const std::string& s, const std::string& t);
StableGraph f_contract(const StableGraph& G, const std::string& s, const std::string& t);

// Codim-1 stratum descriptor used by pull-backs: either the non-separating
// divisor (legs q,r on the factor) or Gamma_{a,S} (s on the genus-a side).
struct Divisor {
  bool irr = true;
  int a = 0;
  std::vector<std::string> S;  // markings on the genus-a side (no s)
  std::string s = "q", t = "r";
};

// Reads off a Divisor from a codim-1 graph; side chooses which vertex plays (a,S).
Divisor divisor_of(const StableGraph& A, int side = 0);
StableGraph divisor_graph(int g, const std::vector<std::string>& P, const Divisor& D);

struct Gluings {
  std::vector<StableGraph> f_list;  // G with f_{s,t}(G) = Gamma
  std::vector<StableGraph> j_list;  // G with j_{s,t}(G) = Gamma
};

// Bare version of the index sets of the boundary pull-back formula. Each G
// is an A-graph with distinguished legs D.s, D.t, listed once per isomorphism
// class with those legs fixed.
Gluings solve_gluings(int g, const std::vector<std::string>& P, const Divisor& D, const StableGraph& Gamma);

// Enumerates, with multiplicity, the A-graphs G of the pull-back formula for
// xi_D^* applied to Gamma (decorations transported). is_j marks the terms that
// still need the excess class. Kappa factors on a split vertex are distributed
// over both sides, one callback per distribution.
bool matches_divisor(const StableGraph& G, const Divisor& D);
void for_each_agraph(const StableGraph& Gamma, const Divisor& D,
                     const std::function<void(StableGraph&&, bool is_j)>& cb);

// Splits a graph into connected pieces (vertex order preserved inside each).
std::vector<StableGraph> connected_pieces(const StableGraph& G);
StableGraph disjoint_union(const StableGraph& a, const StableGraph& b);
StableGraph relabel_legs(const StableGraph& G, const std::map<std::string, std::string>& ren);

}  // namespace tautring4
