#include "tautring4/essential.hpp"

#include "tautring4/calculus.hpp"

#include <algorithm>
#include <set>

namespace tautring4 {

int EssentialBasis::index_of(const TautMonomial& m) const {
  for (size_t i = 0; i < classes.size(); ++i)
    if (classes[i].m == m) return static_cast<int>(i);
  return -1;
}

namespace {

StableGraph trivial(const Ambient& A) {
  StableGraph G;
  G.add_vertex(A.g);
  for (auto& p : A.P) G.legs[p] = HalfEdge{0, 0};
  return G;
}

std::vector<std::string> legs_at(const Ambient& A, const StableGraph& G, int v) {
  std::vector<std::string> S;
  for (auto& p : A.P)
    if (G.legs.at(p).v == v) S.push_back(p);
  for (auto& [n, h] : G.legs)  // labels outside A.P, if any
    if (h.v == v && !A.has(n)) S.push_back(n);
  return S;
}

std::string set_text(const std::vector<std::string>& S) {
  std::string s = "{";
  for (size_t i = 0; i < S.size(); ++i) s += (i ? "," : "") + S[i];
  return s + "}";
}

}  // namespace

std::vector<TautMonomial> generators(const Ambient& A, int degree) {
  require_stable(A);
  std::vector<TautMonomial> out;
  std::set<TautMonomial> seen;
  auto push = [&](const StableGraph& G) {
    TautMonomial m(G);
    if (seen.insert(m).second) out.push_back(m);
  };
  StableGraph T = trivial(A);
  if (degree == 0) {
    push(T);
    return out;
  }
  if (degree == 1) {
    StableGraph K = T;
    K.kappa[0] = {1};
    push(K);
    for (auto& p : A.P) {
      StableGraph H = T;
      H.legs[p].psi = 1;
      push(H);
    }
    for (auto& G : enumerate_stable_graphs(A.g, A.P, 1)) push(G);
    return out;
  }
  if (degree != 2) throw GraphError("generators: degree must be 0, 1 or 2");
  {
    StableGraph K = T;
    K.kappa[0] = {1, 1};
    push(K);
    K.kappa[0] = {2};
    push(K);
    for (auto& p : A.P) {
      StableGraph H = T;
      H.kappa[0] = {1};
      H.legs[p].psi = 1;
      push(H);
    }
    for (auto& p : A.P) {
      StableGraph H = T;
      H.legs[p].psi = 2;
      push(H);
    }
    for (size_t i = 0; i < A.P.size(); ++i)
      for (size_t j = i + 1; j < A.P.size(); ++j) {
        StableGraph H = T;
        H.legs[A.P[i]].psi = 1;
        H.legs[A.P[j]].psi = 1;
        push(H);
      }
  }
  for (auto& G : enumerate_stable_graphs(A.g, A.P, 1)) {
    for (int v = 0; v < G.num_vertices(); ++v) {
      StableGraph H = G;
      H.kappa[v] = {1};
      push(H);
    }
    for (int side = 0; side < 2; ++side) {
      StableGraph H = G;
      H.edges[0][side].psi = 1;
      push(H);
    }
    for (auto& p : A.P) {
      StableGraph H = G;
      H.legs[p].psi = 1;
      push(H);
    }
  }
  for (auto& G : enumerate_stable_graphs(A.g, A.P, 2)) push(G);
  return out;
}

bool keel_keep(const Ambient& A, const std::vector<std::string>& B, const std::vector<std::string>& C) {
  if (B.size() >= 3) return true;
  if (B.size() < 2) return false;
  for (auto& b : B)
    for (auto& c : C)
      if (A.rank(b) > A.rank(c)) return false;
  return true;
}

Essentiality is_essential(const Ambient& A, const TautMonomial& m) {
  const StableGraph& G = m.graph();
  int g = A.g;
  if (m.degree() != 2) return {false, "not of degree 2"};
  if (G.codim() == 0) {
    const auto& K = G.kappa[0];
    int psis = 0;
    for (auto& [n, h] : G.legs) psis += h.psi;
    if (K == std::vector<int>{1, 1}) {
      if (g >= 5 || (g == 4 && A.P.empty())) return {true, ""};
      return {false, "kappa_1^2 is eliminated for this (g,P)"};
    }
    if (K == std::vector<int>{2}) {
      if (g >= 6) return {true, ""};
      return {false, "kappa_2 is eliminated for g <= 5"};
    }
    if (K.size() == 1) {
      if (g >= 4) return {true, ""};
      return {false, "kappa_1 psi_i is eliminated for g <= 3"};
    }
    (void)psis;
    if (g >= 3) return {true, ""};
    return {false, "psi monomials are eliminated for g <= 2"};
  }
  if (G.codim() == 1) {
    bool loop = G.edges[0][0].v == G.edges[0][1].v;
    int v = -1;
    bool kap = false;
    for (int w = 0; w < G.num_vertices(); ++w)
      if (G.vertex_degree(w)) v = w, kap = !G.kappa[w].empty();
    if (loop) {
      if (kap) {
        if (g >= 4) return {true, ""};
        return {false, "kappa|delta_irr for g <= 3"};
      }
      if (g >= 3) return {true, ""};
      return {false, "psi on delta_irr for g = 1, 2"};
    }
    int h = G.genus[v];
    if (h == 0) return {false, "genus-0 side relation"};
    if (h == 1) return {false, "genus-1 side relation"};
    if (kap && h == 2) return {false, "kappa on a genus-2 side"};
    return {true, ""};
  }
  // codim 2: only chains with two adjacent genus-0 vertices can fail (Keel)
  if (G.num_vertices() == 3) {
    std::vector<int> deg(3, 0);
    for (auto& e : G.edges) ++deg[e[0].v], ++deg[e[1].v];
    int mid = static_cast<int>(std::find(deg.begin(), deg.end(), 2) - deg.begin());
    if (G.genus[mid] == 0) {
      bool any = false, all = true;
      for (int e = 0; e < 3; ++e) {
        if (e == mid || G.genus[e] != 0) continue;
        int other = 3 - e - mid;
        if (G.genus[other] != g) continue;
        any = true;
        all = all && keel_keep(A, legs_at(A, G, e), legs_at(A, G, mid));
      }
      if (any && !all) return {false, "Keel relation among G(0,B,0,C)"};
    }
  }
  return {true, ""};
}

BasisClass describe(const Ambient& A, const TautMonomial& m) {
  const StableGraph& G = m.graph();
  BasisClass b{m, 1, ""};
  auto psi_legs = [&]() {
    std::vector<std::pair<std::string, int>> v;
    for (auto& p : A.P)
      if (G.legs.count(p) && G.legs.at(p).psi) v.push_back({p, G.legs.at(p).psi});
    for (auto& [n, h] : G.legs)
      if (!A.has(n) && h.psi) v.push_back({n, h.psi});
    return v;
  };
  if (G.codim() == 0) {
    std::vector<std::string> f;
    const auto& K = G.kappa[0];
    if (K == std::vector<int>{1, 1}) f.push_back("kappa1^2");
    else if (K == std::vector<int>{1}) f.push_back("kappa1");
    else if (K == std::vector<int>{2}) f.push_back("kappa2");
    for (auto& [n, e] : psi_legs()) f.push_back("psi_" + n + (e > 1 ? "^" + std::to_string(e) : ""));
    if (f.empty()) f.push_back("1");
    for (size_t i = 0; i < f.size(); ++i) b.name += (i ? "*" : "") + f[i];
    return b;
  }
  if (G.codim() == 1) {
    bool loop = G.edges[0][0].v == G.edges[0][1].v;
    std::string leg;
    for (auto& [n, e] : psi_legs()) leg = n;
    if (loop) {
      if (!G.kappa[0].empty()) b.name = "kappa1*delta_irr";
      else if (!leg.empty()) b.name = "psi_" + leg + "*delta_irr";
      else if (G.edges[0][0].psi || G.edges[0][1].psi) b.name = "psi|delta_irr", b.scale = 2;
      else b.name = "delta_irr";
      return b;
    }
    // pick the decorated side, otherwise the side family_name would pick
    int v = -1;
    for (int w = 0; w < 2; ++w)
      if (G.vertex_degree(w)) v = w;
    std::string fam = family_name(G.stripped(), A.g, A.P);  // "Gamma_{a,S}"
    std::string div = "delta_" + fam.substr(6);
    if (v < 0) b.name = div;
    else if (!G.kappa[v].empty())
      b.name = "kappa|delta_{" + std::to_string(G.genus[v]) + "," + set_text(legs_at(A, G, v)) + "}";
    else if (!leg.empty()) b.name = "psi_" + leg + "*" + div;
    else b.name = "psi|delta_{" + std::to_string(G.genus[v]) + "," + set_text(legs_at(A, G, v)) + "}";
    return b;
  }
  b.name = "delta_" + family_name(G, A.g, A.P);
  return b;
}

EssentialBasis essential_basis(const Ambient& A) {
  EssentialBasis B{A, {}};
  for (auto& m : generators(A, 2)) {
    if (vanishes_by_dimension(m.graph())) continue;
    if (is_essential(A, m).essential) B.classes.push_back(describe(A, m));
  }
  return B;
}

EssentialBasis degree1_basis(const Ambient& A) {
  EssentialBasis B{A, {}};
  std::string last = A.P.empty() ? "" : A.P.back();
  for (auto& m : generators(A, 1)) {
    const StableGraph& G = m.graph();
    if (vanishes_by_dimension(G)) continue;
    if (G.codim() == 0) {
      bool kap = !G.kappa[0].empty();
      if (kap ? A.g >= 3 : A.g >= 2) B.classes.push_back(describe(A, m));
      continue;
    }
    if (A.g == 0) {
      // delta_{0,{last} u C}: keep by the Keel rule on the side B without the last marking
      int side = G.legs.at(last).v == 0 ? 1 : 0;
      std::vector<std::string> Bs = legs_at(A, G, side), Cs;
      for (auto& p : A.P)
        if (p != last && std::find(Bs.begin(), Bs.end(), p) == Bs.end()) Cs.push_back(p);
      if (!keel_keep(A, Bs, Cs)) continue;
    }
    B.classes.push_back(describe(A, m));
  }
  return B;
}

}  // namespace tautring4
