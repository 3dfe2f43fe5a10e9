#include "tautring4/calculus.hpp"

#include <algorithm>
#include <set>

namespace tautring4 {

std::string fresh_label(const Ambient& A, const std::string& base) {
  std::string s = base;
  while (A.has(s)) s += "'";
  return s;
}

Divisor make_divisor(const Ambient& A, bool irr, int a, std::vector<std::string> S) {
  Divisor D;
  D.irr = irr;
  D.a = a;
  std::sort(S.begin(), S.end(), [&](auto& x, auto& y) { return A.rank(x) < A.rank(y); });
  D.S = std::move(S);
  D.s = fresh_label(A, irr ? "q" : "s");
  D.t = fresh_label(A.with({D.s}), irr ? "r" : "t");
  divisor_graph(A.g, A.P, D);  // throws when unstable
  return D;
}

Divisor divisor_from_graph(const Ambient& A, const StableGraph& G) {
  Divisor d = divisor_of(G, 0);
  return make_divisor(A, d.irr, d.a, d.S);
}

std::vector<Ambient> factor_ambients(const Ambient& A, const Divisor& D) {
  if (D.irr) return {Ambient{A.g - 1, A.P}.with({D.s, D.t})};
  std::set<std::string> S(D.S.begin(), D.S.end());
  Ambient f1{D.a, {}}, f2{A.g - D.a, {}};
  for (auto& p : A.P) (S.count(p) ? f1 : f2).P.push_back(p);
  f1.P.push_back(D.s);
  f2.P.push_back(D.t);
  return {f1, f2};
}

bool vanishes_by_dimension(const StableGraph& G) {
  for (int v = 0; v < G.num_vertices(); ++v)
    if (G.vertex_degree(v) > 3 * G.genus[v] - 3 + G.valence(v)) return true;
  return false;
}

namespace {

void add_nonzero(RawExpr& e, const StableGraph& G, const Q& c) {
  if (c != 0 && !vanishes_by_dimension(G)) raw_add(e, G, c);
}

std::vector<TautMonomial> split_key(const StableGraph& G, const Divisor& D) {
  if (D.irr) return {TautMonomial(G)};
  auto pieces = connected_pieces(G);
  if (!pieces[0].legs.count(D.s)) std::swap(pieces[0], pieces[1]);
  return {TautMonomial(pieces[0]), TautMonomial(pieces[1])};
}

}  // namespace

TensorExpr boundary_pullback_raw(const Ambient& A, const RawExpr& e, const Divisor& D) {
  TensorExpr out;
  out.factors = factor_ambients(A, D);
  for (auto& [m, c] : e) {
    for_each_agraph(m.graph(), D, [&](StableGraph&& G, bool is_j) {
      auto emit = [&](const StableGraph& H, const Q& x) {
        if (vanishes_by_dimension(H)) return;
        out.add(split_key(H, D), x);
      };
      if (!is_j) {
        emit(G, c);
        return;
      }
      // excess class -psi_s - psi_t
      StableGraph H = G;
      H.legs[D.s].psi += 1;
      emit(H, -c);
      H = G;
      H.legs[D.t].psi += 1;
      emit(H, -c);
    });
  }
  return out;
}

RawExpr pushforward_raw(const TensorExpr& t, const Divisor& D) {
  RawExpr out;
  for (auto& [key, c] : t.terms) {
    StableGraph G = key[0].graph();
    for (size_t i = 1; i < key.size(); ++i) G = disjoint_union(G, key[i].graph());
    add_nonzero(out, j_glue(G, D.s, D.t), c);
  }
  return out;
}

namespace {

Ambient ambient_of(const TautMonomial& m) {
  Ambient A{m.graph().total_genus(), {}};
  for (auto& [n, h] : m.graph().legs) A.P.push_back(n);
  return A;
}

bool is_divisor_class(const TautMonomial& m) {
  return m.degree() == 1 && (m.codim() == 0 || m.graph().bare());
}

// m1 is a divisor class (degree 1); m2 arbitrary with degree(m2) <= 1.
void mul_into(RawExpr& out, const TautMonomial& m1, const TautMonomial& m2, const Q& c) {
  const StableGraph& G1 = m1.graph();
  if (m1.codim() == 0) {
    bool kap = !G1.kappa[0].empty();
    std::string leg;
    for (auto& [n, h] : G1.legs)
      if (h.psi) leg = n;
    if (kap) {
      for (int v = 0; v < m2.graph().num_vertices(); ++v) {
        StableGraph H = m2.graph();
        H.kappa[v].push_back(1);
        std::sort(H.kappa[v].begin(), H.kappa[v].end());
        add_nonzero(out, H, c);
      }
    } else {
      StableGraph H = m2.graph();
      H.legs.at(leg).psi += 1;
      add_nonzero(out, H, c);
    }
    return;
  }
  Ambient A = ambient_of(m1);
  Divisor D = divisor_from_graph(A, G1);
  RawExpr one;
  one.emplace(m2, c);
  raw_add(out, pushforward_raw(boundary_pullback_raw(A, one, D), D));
}

}  // namespace

RawExpr multiply_raw(const RawExpr& a, const RawExpr& b) {
  RawExpr out;
  for (auto& [m1, c1] : a)
    for (auto& [m2, c2] : b) {
      if (m1.degree() == 0) {
        StableGraph H = m2.graph();
        add_nonzero(out, H, c1 * c2);
      } else if (m2.degree() == 0) {
        add_nonzero(out, m1.graph(), c1 * c2);
      } else if (is_divisor_class(m1) && m2.degree() <= 1) {
        mul_into(out, m1, m2, c1 * c2);
      } else if (is_divisor_class(m2) && m1.degree() <= 1) {
        mul_into(out, m2, m1, c1 * c2);
      } else {
        throw GraphError("product outside degree <= 2 divisor calculus");
      }
    }
  return out;
}

namespace {

// Moves half-edge h of vertex v (a leg name, or edge/side) onto a new genus-0
// bubble which also carries leg x.
StableGraph bubble(StableGraph H, int v, const std::string& leg, int edge, int side, const std::string& x) {
  int b = H.add_vertex(0);
  if (!leg.empty()) H.legs[leg] = HalfEdge{b, 0};
  else H.edges[edge][side] = HalfEdge{b, 0};
  H.legs[x] = HalfEdge{b, 0};
  H.add_edge(v, b);
  return H;
}

// pull-back of a monomial whose decoration has degree <= 1
void forget_low(RawExpr& out, const StableGraph& G, const std::string& x, const Q& c) {
  for (int v = 0; v < G.num_vertices(); ++v) {
    StableGraph H = G;
    H.legs[x] = HalfEdge{v, 0};
    add_nonzero(out, H, c);
    if (G.vertex_degree(v) == 0) continue;
    if (!H.kappa[v].empty()) {  // kappa_1 -> kappa_1 - psi_x
      StableGraph K = H;
      K.kappa[v].clear();
      K.legs[x].psi = 1;
      add_nonzero(out, K, -c);
      continue;
    }
    for (auto& [n, h] : G.legs)
      if (h.v == v && h.psi) {
        StableGraph K = H.stripped();
        add_nonzero(out, bubble(K, v, n, -1, -1, x), -c);
      }
    for (int e = 0; e < G.codim(); ++e)
      for (int side = 0; side < 2; ++side)
        if (G.edges[e][side].v == v && G.edges[e][side].psi) {
          StableGraph K = H.stripped();
          add_nonzero(out, bubble(K, v, "", e, side, x), -c);
        }
  }
}

}  // namespace

RawExpr forget_raw(const RawExpr& e, const std::string& x) {
  RawExpr out;
  for (auto& [m, c] : e) {
    const StableGraph& G = m.graph();
    if (G.legs.count(x)) throw GraphError("forgetful pull-back: '" + x + "' is already a marking");
    if (G.codim() > 0 || G.decoration_degree() <= 1) {
      forget_low(out, G, x, c);
      continue;
    }
    // codim 0, degree 2: kappa_2, or a product of two degree-1 Mumford classes
    const auto& K = G.kappa[0];
    if (K.size() == 1 && K[0] == 2) {
      StableGraph H = G;
      H.legs[x] = HalfEdge{0, 0};
      add_nonzero(out, H, c);
      H.kappa[0].clear();
      H.legs[x].psi = 2;
      add_nonzero(out, H, -c);
      continue;
    }
    std::vector<StableGraph> fac;
    StableGraph base = G.stripped();
    for (int k : K) {
      (void)k;
      StableGraph F = base;
      F.kappa[0] = {1};
      fac.push_back(F);
    }
    for (auto& [n, h] : G.legs)
      for (int i = 0; i < h.psi; ++i) {
        StableGraph F = base;
        F.legs[n].psi = 1;
        fac.push_back(F);
      }
    RawExpr f1, f2, p1, p2;
    raw_add(f1, fac[0], 1);
    raw_add(f2, fac[1], 1);
    RawExpr prod = multiply_raw(forget_raw(f1, x), forget_raw(f2, x));
    raw_add(out, prod, c);
  }
  return out;
}

TautExpression product_deg2(const TautExpression& a, const TautExpression& b) {
  if (a.degree() > 1 || b.degree() > 1 || !(a.ambient() == b.ambient()))
    throw GraphError("product_deg2 needs two degree-1 classes on one ambient");
  return multiply(a, b);
}

TautExpression multiply(const TautExpression& a, const TautExpression& b) {
  if (a.ambient().g != b.ambient().g) throw GraphError("multiply: different ambients");
  if (a.degree() + b.degree() > 2) throw GraphError("multiply: degree above 2");
  return TautExpression::from_raw(a.ambient(), multiply_raw(a.raw(), b.raw()));
}

TensorExpr tensor_to_normalized(const TensorExpr& t) {
  TensorExpr r;
  r.factors = t.factors;
  for (auto& [key, c] : t.terms) {
    Q x = c;
    for (auto& m : key) x *= m.graph_aut();
    r.add(key, x);
  }
  return r;
}

TensorExpr tensor_to_raw(const TensorExpr& t) {
  TensorExpr r;
  r.factors = t.factors;
  for (auto& [key, c] : t.terms) {
    Q x = c;
    for (auto& m : key) x /= m.graph_aut();
    r.add(key, x);
  }
  return r;
}

TensorExpr boundary_pullback(const TautExpression& e, const Divisor& D) {
  return tensor_to_normalized(boundary_pullback_raw(e.ambient(), e.raw(), D));
}

TautExpression pushforward(const Ambient& A, const TensorExpr& t, const Divisor& D) {
  return TautExpression::from_raw(A, pushforward_raw(tensor_to_raw(t), D));
}

TautExpression forgetful_pullback(const TautExpression& e, const std::vector<std::string>& xs) {
  Ambient A = e.ambient();
  RawExpr r = e.raw();
  for (auto& x : xs) {
    if (A.has(x)) throw GraphError("forgetful pull-back: '" + x + "' already in P");
    r = forget_raw(r, x);
    A = A.with({x});
  }
  return TautExpression::from_raw(A, r);
}

}  // namespace tautring4
