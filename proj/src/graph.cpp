#include "tautring4/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "tautring4/rational.hpp"

namespace tautring4 {

Q parse_fraction(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t.empty()) throw std::invalid_argument("empty coefficient");
  auto ok = [](const std::string& u, bool sign) {
    if (u.empty()) return false;
    size_t i = 0;
    if (sign && (u[0] == '-' || u[0] == '+')) i = 1;
    if (i == u.size()) return false;
    for (; i < u.size(); ++i)
      if (u[i] < '0' || u[i] > '9') return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!ok(num, true) || !ok(den, false)) throw std::invalid_argument("bad coefficient '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  Z d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Q q{Z(num), d};
  q.canonicalize();
  return q;
}

int StableGraph::valence(int v) const {
  int r = 0;
  for (auto& e : edges) r += (e[0].v == v) + (e[1].v == v);
  for (auto& [name, h] : legs) r += h.v == v;
  return r;
}

int StableGraph::component_of(int v0, std::vector<int>& comp) const {
  (void)v0;
  int n = num_vertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto& e : edges) parent[find(e[0].v)] = find(e[1].v);
  comp.assign(n, -1);
  std::map<int, int> ids;
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, static_cast<int>(ids.size())).first;
    comp[v] = it->second;
  }
  return static_cast<int>(ids.size());
}

int StableGraph::components() const {
  std::vector<int> comp;
  return component_of(0, comp);
}

int StableGraph::total_genus() const {
  int g = codim() - num_vertices() + components();
  for (int x : genus) g += x;
  return g;
}

bool StableGraph::is_stable() const {
  for (int v = 0; v < num_vertices(); ++v)
    if (2 * genus[v] + valence(v) < 3) return false;
  return true;
}

int StableGraph::vertex_degree(int v) const {
  int d = 0;
  for (int k : kappa[v]) d += k;
  for (auto& e : edges)
    for (auto& h : e)
      if (h.v == v) d += h.psi;
  for (auto& [name, h] : legs)
    if (h.v == v) d += h.psi;
  return d;
}

int StableGraph::decoration_degree() const {
  int d = 0;
  for (int v = 0; v < num_vertices(); ++v) d += vertex_degree(v);
  return d;
}

StableGraph StableGraph::stripped() const {
  StableGraph G = *this;
  for (auto& k : G.kappa) k.clear();
  for (auto& e : G.edges) e[0].psi = e[1].psi = 0;
  for (auto& [n, h] : G.legs) h.psi = 0;
  return G;
}

int StableGraph::add_vertex(int g) {
  genus.push_back(g);
  kappa.emplace_back();
  return num_vertices() - 1;
}

void StableGraph::validate() const {
  int n = num_vertices();
  if (static_cast<int>(kappa.size()) != n) throw GraphError("kappa list does not match vertex count");
  for (int g : genus)
    if (g < 0) throw GraphError("negative vertex genus");
  auto check = [&](const HalfEdge& h) {
    if (h.v < 0 || h.v >= n) throw GraphError("half-edge attached to missing vertex");
    if (h.psi < 0) throw GraphError("negative psi exponent");
  };
  for (auto& e : edges) check(e[0]), check(e[1]);
  for (auto& [name, h] : legs) {
    if (name.empty()) throw GraphError("empty marking label");
    check(h);
  }
  for (auto& k : kappa)
    for (int a : k)
      if (a < 1 || a > 2) throw GraphError("only kappa_1 and kappa_2 are supported");
}

// ---------------------------------------------------------------- canonical form

namespace {

using Code = std::vector<int>;

Code vertex_invariant(const StableGraph& G, int v) {
  Code c{G.genus[v], static_cast<int>(G.kappa[v].size())};
  c.insert(c.end(), G.kappa[v].begin(), G.kappa[v].end());
  int idx = 0;
  for (auto& [name, h] : G.legs) {
    if (h.v == v) c.push_back(idx), c.push_back(h.psi);
    ++idx;
  }
  c.push_back(-1);
  std::vector<std::array<int, 4>> inc;
  for (auto& e : G.edges)
    for (int side = 0; side < 2; ++side)
      if (e[side].v == v) {
        const HalfEdge& o = e[1 - side];
        inc.push_back({o.v == v, e[side].psi, o.psi, G.genus[o.v]});
      }
  std::sort(inc.begin(), inc.end());
  for (auto& a : inc) c.insert(c.end(), a.begin(), a.end());
  return c;
}

using EdgeKey = std::array<int, 4>;

EdgeKey edge_key(const std::array<HalfEdge, 2>& e, const std::vector<int>& pos) {
  std::array<int, 2> x{pos[e[0].v], e[0].psi}, y{pos[e[1].v], e[1].psi};
  if (y < x) std::swap(x, y);
  return {x[0], x[1], y[0], y[1]};
}

Code encode(const StableGraph& G, const std::vector<int>& pos) {
  std::vector<EdgeKey> keys;
  keys.reserve(G.edges.size());
  for (auto& e : G.edges) keys.push_back(edge_key(e, pos));
  std::sort(keys.begin(), keys.end());
  Code c;
  for (auto& k : keys) c.insert(c.end(), k.begin(), k.end());
  for (auto& [name, h] : G.legs) c.push_back(pos[h.v]);
  return c;
}

}  // namespace

CanonicalForm canonical_form(const StableGraph& G) {
  int n = G.num_vertices();
  std::vector<Code> inv(n);
  for (int v = 0; v < n; ++v) inv[v] = vertex_invariant(G, v);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inv[a] < inv[b]; });

  // cells of equal invariant, as ranges in `order`
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && inv[order[j]] == inv[order[i]]) ++j;
    cells.push_back({i, j});
    i = j;
  }

  Code best;
  std::vector<int> best_pos;
  long hits = 0;
  std::vector<int> perm = order;
  std::vector<int> pos(n);
  std::function<void(size_t)> rec = [&](size_t ci) {
    if (ci == cells.size()) {
      for (int i = 0; i < n; ++i) pos[perm[i]] = i;
      Code c = encode(G, pos);
      if (best_pos.empty() || c < best) {
        best = std::move(c);
        best_pos = pos;
        hits = 1;
      } else if (c == best) {
        ++hits;
      }
      return;
    }
    auto [a, b] = cells[ci];
    std::sort(perm.begin() + a, perm.begin() + b);
    do {
      rec(ci + 1);
    } while (std::next_permutation(perm.begin() + a, perm.begin() + b));
  };
  if (n == 0) best_pos = {};
  rec(0);

  CanonicalForm out;
  StableGraph& H = out.graph;
  H.genus.resize(n);
  H.kappa.resize(n);
  for (int v = 0; v < n; ++v) {
    H.genus[best_pos[v]] = G.genus[v];
    H.kappa[best_pos[v]] = G.kappa[v];
    std::sort(H.kappa[best_pos[v]].begin(), H.kappa[best_pos[v]].end());
  }
  std::vector<EdgeKey> keys;
  for (auto& e : G.edges) keys.push_back(edge_key(e, best_pos));
  std::sort(keys.begin(), keys.end());
  long aut = hits;
  for (size_t i = 0; i < keys.size();) {
    size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    for (size_t m = 2; m <= j - i; ++m) aut *= static_cast<long>(m);
    if (keys[i][0] == keys[i][2] && keys[i][1] == keys[i][3])
      for (size_t m = i; m < j; ++m) aut *= 2;
    i = j;
  }
  for (auto& k : keys) H.edges.push_back({HalfEdge{k[0], k[1]}, HalfEdge{k[2], k[3]}});
  for (auto& [name, h] : G.legs) H.legs[name] = HalfEdge{best_pos[h.v], h.psi};

  out.code.push_back(n);
  out.code.push_back(static_cast<int>(keys.size()));
  for (int v = 0; v < n; ++v) {
    out.code.push_back(H.genus[v]);
    out.code.push_back(static_cast<int>(H.kappa[v].size()));
    out.code.insert(out.code.end(), H.kappa[v].begin(), H.kappa[v].end());
  }
  for (auto& [name, h] : H.legs) out.code.push_back(h.psi);
  out.code.insert(out.code.end(), best.begin(), best.end());
  out.aut = aut;
  return out;
}

long aut_count(const StableGraph& G) { return canonical_form(G.stripped()).aut; }

bool isomorphic(const StableGraph& a, const StableGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.codim() != b.codim() || a.legs.size() != b.legs.size())
    return false;
  for (auto ia = a.legs.begin(), ib = b.legs.begin(); ia != a.legs.end(); ++ia, ++ib)
    if (ia->first != ib->first) return false;
  return canonical_form(a).code == canonical_form(b).code;
}

// ---------------------------------------------------------------- j and f

StableGraph j_glue(const StableGraph& G, const std::string& s, const std::string& t) {
  auto is = G.legs.find(s), it = G.legs.find(t);
  if (is == G.legs.end() || it == G.legs.end() || s == t)
    throw GraphError("j_glue: legs '" + s + "' and '" + t + "' must be two distinct legs");
  StableGraph H = G;
  H.edges.push_back({is->second, it->second});
  H.legs.erase(s);
  H.legs.erase(t);
  return H;
}

StableGraph f_contract(const StableGraph& G, const std::string& s, const std::string& t) {
  auto is = G.legs.find(s), it = G.legs.find(t);
  if (is == G.legs.end() || it == G.legs.end() || s == t)
    throw GraphError("f_contract: legs '" + s + "' and '" + t + "' must be two distinct legs");
  if (is->second.psi || it->second.psi) throw GraphError("f_contract: psi on a contracted half-edge");
  int a = is->second.v, b = it->second.v;
  StableGraph H = G;
  H.legs.erase(s);
  H.legs.erase(t);
  if (a == b) {
    H.genus[a] += 1;
    return H;
  }
  if (a > b) std::swap(a, b);
  // merge b into a, then drop b
  H.genus[a] += H.genus[b];
  H.kappa[a].insert(H.kappa[a].end(), H.kappa[b].begin(), H.kappa[b].end());
  std::sort(H.kappa[a].begin(), H.kappa[a].end());
  auto remap = [&](HalfEdge& h) {
    if (h.v == b) h.v = a;
    else if (h.v > b) --h.v;
  };
  for (auto& e : H.edges) remap(e[0]), remap(e[1]);
  for (auto& [n, h] : H.legs) remap(h);
  H.genus.erase(H.genus.begin() + b);
  H.kappa.erase(H.kappa.begin() + b);
  return H;
}

std::vector<StableGraph> connected_pieces(const StableGraph& G) {
  std::vector<int> comp;
  int nc = G.component_of(0, comp);
  std::vector<StableGraph> out(nc);
  std::vector<int> local(G.num_vertices());
  for (int v = 0; v < G.num_vertices(); ++v) local[v] = out[comp[v]].add_vertex(G.genus[v]), out[comp[v]].kappa[local[v]] = G.kappa[v];
  for (auto& e : G.edges)
    out[comp[e[0].v]].edges.push_back({HalfEdge{local[e[0].v], e[0].psi}, HalfEdge{local[e[1].v], e[1].psi}});
  for (auto& [n, h] : G.legs) out[comp[h.v]].legs[n] = HalfEdge{local[h.v], h.psi};
  return out;
}

StableGraph disjoint_union(const StableGraph& a, const StableGraph& b) {
  StableGraph H = a;
  int off = a.num_vertices();
  for (int v = 0; v < b.num_vertices(); ++v) H.genus.push_back(b.genus[v]), H.kappa.push_back(b.kappa[v]);
  for (auto e : b.edges) {
    e[0].v += off, e[1].v += off;
    H.edges.push_back(e);
  }
  for (auto [n, h] : b.legs) {
    if (H.legs.count(n)) throw GraphError("disjoint_union: marking '" + n + "' on both sides");
    h.v += off;
    H.legs[n] = h;
  }
  return H;
}

StableGraph relabel_legs(const StableGraph& G, const std::map<std::string, std::string>& ren) {
  StableGraph H = G;
  H.legs.clear();
  for (auto& [n, h] : G.legs) {
    auto it = ren.find(n);
    const std::string& m = it == ren.end() ? n : it->second;
    if (H.legs.count(m)) throw GraphError("relabel_legs: label collision on '" + m + "'");
    H.legs[m] = h;
  }
  return H;
}

// ---------------------------------------------------------------- divisors

Divisor divisor_of(const StableGraph& A, int side) {
  if (A.codim() != 1) throw GraphError("divisor_of: expected a codimension-1 graph");
  Divisor D;
  const auto& e = A.edges[0];
  if (e[0].v == e[1].v) {
    D.irr = true;
    return D;
  }
  D.irr = false;
  int v = e[side].v;
  D.a = A.genus[v];
  for (auto& [n, h] : A.legs)
    if (h.v == v) D.S.push_back(n);
  D.s = "s";
  D.t = "t";
  return D;
}

StableGraph divisor_graph(int g, const std::vector<std::string>& P, const Divisor& D) {
  StableGraph G;
  if (D.irr) {
    if (g < 1) throw GraphError("Gamma_irr needs genus >= 1");
    G.add_vertex(g - 1);
    G.add_edge(0, 0);
    for (auto& p : P) G.legs[p] = HalfEdge{0, 0};
  } else {
    if (D.a < 0 || D.a > g) throw GraphError("separating divisor genus out of range");
    G.add_vertex(D.a);
    G.add_vertex(g - D.a);
    G.add_edge(0, 1);
    std::set<std::string> S(D.S.begin(), D.S.end());
    for (auto& x : S)
      if (std::find(P.begin(), P.end(), x) == P.end()) throw GraphError("marking '" + x + "' not in P");
    for (auto& p : P) G.legs[p] = HalfEdge{S.count(p) ? 0 : 1, 0};
  }
  if (!G.is_stable()) throw GraphError("divisor is not a stable graph for this (g,P)");
  return G;
}

}  // namespace tautring4

namespace tautring4 {

bool matches_divisor(const StableGraph& G, const Divisor& D) {
  std::vector<int> comp;
  int nc = G.component_of(0, comp);
  if (D.irr) return nc == 1;
  if (nc != 2) return false;
  int cs = comp[G.legs.at(D.s).v];
  if (comp[G.legs.at(D.t).v] == cs) return false;
  int gs = 0, es = 0, vs = 0;
  for (int v = 0; v < G.num_vertices(); ++v)
    if (comp[v] == cs) gs += G.genus[v], ++vs;
  for (auto& e : G.edges)
    if (comp[e[0].v] == cs) ++es;
  if (gs + es - vs + 1 != D.a) return false;
  std::set<std::string> S(D.S.begin(), D.S.end()), have;
  for (auto& [n, h] : G.legs)
    if (comp[h.v] == cs && n != D.s) have.insert(n);
  return have == S;
}

void for_each_agraph(const StableGraph& Gamma, const Divisor& D,
                     const std::function<void(StableGraph&&, bool)>& cb) {
  // j-terms: cut an edge, both orientations
  for (int e = 0; e < Gamma.codim(); ++e)
    for (int o = 0; o < 2; ++o) {
      StableGraph G = Gamma;
      auto halves = G.edges[e];
      G.edges.erase(G.edges.begin() + e);
      G.legs[D.s] = halves[o];
      G.legs[D.t] = halves[1 - o];
      if (matches_divisor(G, D)) cb(std::move(G), true);
    }

  // f-terms: degenerate one vertex
  for (int v = 0; v < Gamma.num_vertices(); ++v) {
    if (Gamma.genus[v] >= 1) {
      StableGraph G = Gamma;
      G.genus[v] -= 1;
      G.legs[D.s] = HalfEdge{v, 0};
      G.legs[D.t] = HalfEdge{v, 0};
      if (matches_divisor(G, D)) cb(std::move(G), false);
    }
    // half-edges at v: edge sides then legs
    std::vector<std::pair<int, int>> eh;  // (edge, side)
    std::vector<std::string> lh;
    for (int e = 0; e < Gamma.codim(); ++e)
      for (int side = 0; side < 2; ++side)
        if (Gamma.edges[e][side].v == v) eh.push_back({e, side});
    for (auto& [n, h] : Gamma.legs)
      if (h.v == v) lh.push_back(n);
    int nh = static_cast<int>(eh.size() + lh.size());
    const auto& kap = Gamma.kappa[v];
    int nk = static_cast<int>(kap.size());
    for (unsigned mask = 0; mask < (1u << nh); ++mask) {
      int n1 = __builtin_popcount(mask), n2 = nh - n1;
      for (int a1 = 0; a1 <= Gamma.genus[v]; ++a1) {
        int a2 = Gamma.genus[v] - a1;
        if (2 * a1 + n1 + 1 < 3 || 2 * a2 + n2 + 1 < 3) continue;
        for (unsigned km = 0; km < (1u << nk); ++km) {
          StableGraph G = Gamma;
          int w = G.add_vertex(a2);
          G.genus[v] = a1;
          G.kappa[v].clear();
          for (int i = 0; i < nk; ++i) (km >> i & 1 ? G.kappa[w] : G.kappa[v]).push_back(kap[i]);
          for (int i = 0; i < nh; ++i) {
            if (mask >> i & 1) continue;
            if (i < static_cast<int>(eh.size()))
              G.edges[eh[i].first][eh[i].second].v = w;
            else
              G.legs[lh[i - eh.size()]].v = w;
          }
          G.legs[D.s] = HalfEdge{v, 0};
          G.legs[D.t] = HalfEdge{w, 0};
          if (matches_divisor(G, D)) cb(std::move(G), false);
        }
      }
    }
  }
}

Gluings solve_gluings(int g, const std::vector<std::string>& P, const Divisor& D, const StableGraph& Gamma) {
  (void)g;
  (void)P;
  Gluings out;
  std::set<std::vector<int>> seen_f, seen_j;
  for_each_agraph(Gamma.stripped(), D, [&](StableGraph&& G, bool is_j) {
    auto cf = canonical_form(G);
    auto& seen = is_j ? seen_j : seen_f;
    if (seen.insert(cf.code).second) (is_j ? out.j_list : out.f_list).push_back(cf.graph);
  });
  return out;
}

}  // namespace tautring4
