#include <algorithm>
#include <set>

#include "tautring4/graph.hpp"

namespace tautring4 {

namespace {

// All one-step degenerations of a bare graph: split a vertex by a loop or by
// a separating node.
std::vector<StableGraph> degenerations(const StableGraph& G) {
  std::vector<StableGraph> out;
  for (int v = 0; v < G.num_vertices(); ++v) {
    if (G.genus[v] >= 1) {
      StableGraph H = G;
      H.genus[v] -= 1;
      H.add_edge(v, v);
      out.push_back(std::move(H));
    }
    std::vector<std::pair<int, int>> eh;
    std::vector<std::string> lh;
    for (int e = 0; e < G.codim(); ++e)
      for (int side = 0; side < 2; ++side)
        if (G.edges[e][side].v == v) eh.push_back({e, side});
    for (auto& [n, h] : G.legs)
      if (h.v == v) lh.push_back(n);
    int nh = static_cast<int>(eh.size() + lh.size());
    for (unsigned mask = 0; mask < (1u << nh); ++mask) {
      int n1 = __builtin_popcount(mask), n2 = nh - n1;
      for (int a1 = 0; a1 <= G.genus[v]; ++a1) {
        int a2 = G.genus[v] - a1;
        if (2 * a1 + n1 + 1 < 3 || 2 * a2 + n2 + 1 < 3) continue;
        StableGraph H = G;
        int w = H.add_vertex(a2);
        H.genus[v] = a1;
        for (int i = 0; i < nh; ++i) {
          if (mask >> i & 1) continue;
          if (i < static_cast<int>(eh.size()))
            H.edges[eh[i].first][eh[i].second].v = w;
          else
            H.legs[lh[i - eh.size()]].v = w;
        }
        H.add_edge(v, w);
        out.push_back(std::move(H));
      }
    }
  }
  return out;
}

std::string set_text(const std::vector<std::string>& order, const std::set<std::string>& S) {
  std::string s = "{";
  bool first = true;
  for (auto& p : order)
    if (S.count(p)) {
      if (!first) s += ",";
      s += p;
      first = false;
    }
  for (auto& p : S)  // auxiliary labels not in the order list
    if (std::find(order.begin(), order.end(), p) == order.end()) {
      if (!first) s += ",";
      s += p;
      first = false;
    }
  return s + "}";
}

std::set<std::string> legs_at(const StableGraph& G, int v) {
  std::set<std::string> S;
  for (auto& [n, h] : G.legs)
    if (h.v == v) S.insert(n);
  return S;
}

// rank of a marking set for tie-breaking: position of its first element in P
int first_rank(const std::vector<std::string>& P, const std::set<std::string>& S) {
  for (size_t i = 0; i < P.size(); ++i)
    if (S.count(P[i])) return static_cast<int>(i);
  return static_cast<int>(P.size()) + (S.empty() ? 1 : 0);
}

}  // namespace

std::vector<StableGraph> enumerate_stable_graphs(int g, const std::vector<std::string>& P, int codim) {
  int n = static_cast<int>(P.size());
  if (g < 0 || 2 * g - 2 + n <= 0) throw GraphError("unstable (g,P): need 2g-2+|P| > 0");
  if (codim < 0 || codim > 2) throw GraphError("only codimension 0, 1, 2 is supported");
  std::set<std::string> uniq(P.begin(), P.end());
  if (static_cast<int>(uniq.size()) != n) throw GraphError("duplicate marking label");

  StableGraph root;
  root.add_vertex(g);
  for (auto& p : P) root.legs[p] = HalfEdge{0, 0};
  std::vector<StableGraph> level{canonical_form(root).graph};
  for (int k = 0; k < codim; ++k) {
    std::map<std::vector<int>, StableGraph> next;
    for (auto& G : level)
      for (auto& H : degenerations(G)) {
        auto cf = canonical_form(H);
        next.emplace(cf.code, cf.graph);
      }
    level.clear();
    for (auto& [code, G] : next) level.push_back(G);
  }
  return level;
}

std::string family_name(const StableGraph& G, int g, const std::vector<std::string>& P) {
  auto S = [&](int v) { return set_text(P, legs_at(G, v)); };
  auto better = [&](int v, int w) {  // is v the preferred "first" vertex over w
    if (G.genus[v] != G.genus[w]) return G.genus[v] < G.genus[w];
    return first_rank(P, legs_at(G, v)) <= first_rank(P, legs_at(G, w));
  };
  int V = G.num_vertices(), E = G.codim();
  if (E == 0) return "1";
  auto is_loop = [&](int e) { return G.edges[e][0].v == G.edges[e][1].v; };
  if (E == 1) {
    if (is_loop(0)) return "Gamma_irr";
    int v = better(0, 1) ? 0 : 1;
    return "Gamma_{" + std::to_string(G.genus[v]) + "," + S(v) + "}";
  }
  if (E == 2) {
    if (V == 1) return "F";
    if (V == 2) {
      if (!is_loop(0) && !is_loop(1)) {
        int v = better(0, 1) ? 0 : 1;
        return "E(" + std::to_string(G.genus[v]) + "," + S(v) + ")";
      }
      int lv = is_loop(0) ? G.edges[0][0].v : G.edges[1][0].v;
      return "H(" + std::to_string(G.genus[lv]) + "," + S(lv) + ")";
    }
    if (V == 3) {
      std::vector<int> deg(3, 0);
      for (auto& e : G.edges) ++deg[e[0].v], ++deg[e[1].v];
      int mid = 0;
      while (deg[mid] != 2) ++mid;
      std::vector<int> ends;
      for (int v = 0; v < 3; ++v)
        if (v != mid) ends.push_back(v);
      int a = better(ends[0], ends[1]) ? ends[0] : ends[1];
      return "G(" + std::to_string(G.genus[a]) + "," + S(a) + "," + std::to_string(G.genus[mid]) + "," + S(mid) + ")";
    }
  }
  (void)g;
  return "codim" + std::to_string(E);
}

}  // namespace tautring4
