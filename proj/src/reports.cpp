#include "tautring4/reports.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "tautring4/calculus.hpp"

namespace tautring4 {

RationalMatrix matrix_of_map(const std::vector<TautExpression>& source,
                             const std::function<QVec(const TautExpression&)>& f, int target_dim) {
  RationalMatrix M(0, target_dim);
  for (auto& e : source) {
    QVec v = f(e);
    for (auto& [c, x] : v)
      if (c < 0 || c >= target_dim) throw std::out_of_range("matrix_of_map: column out of range");
    M.append_row(v);
  }
  return M;
}

std::vector<int> surviving_classes(const Catalog& c) {
  std::vector<int> out;
  const auto& cls = c.basis().classes;
  for (size_t j = 0; j < cls.size(); ++j) {
    TautExpression e(c.ambient());
    e.add(cls[j].m, cls[j].scale);
    Reduction r = c.reduce(e);
    bool unit = r.residual.is_zero();
    for (size_t i = 0; unit && i < r.coords.size(); ++i) unit = r.coords[i] == (i == j ? 1 : 0);
    if (unit) out.push_back(static_cast<int>(j));
  }
  return out;
}

bool RankReport::blocks_maximal() const {
  for (auto& b : blocks)
    if (!b.maximal()) return false;
  return true;
}

namespace {

// Vertex with the psi/kappa decoration of a codim-1 monomial, or -1.
int decorated_vertex(const StableGraph& G) {
  for (int v = 0; v < G.num_vertices(); ++v)
    if (G.vertex_degree(v)) return v;
  return -1;
}

// Label of the marking group: "P" (in I), "J" (in P but not I), "O" otherwise.
using GroupOf = std::function<std::string(const std::string&)>;

std::string piudisette_type(const TautMonomial& m, const GroupOf& group) {
  const StableGraph& G = m.graph();
  std::set<std::string> groups;
  for (auto& [n, h] : G.legs)
    if (h.psi) groups.insert(group(n));
  std::string gs;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) gs += *it;  // "P", "O", "OP", ...
  if (G.codim() == 0) return groups.empty() ? "K" : "Psi_" + gs;
  if (G.codim() == 1) {
    int v = decorated_vertex(G);
    if (v >= 0 && !G.kappa[v].empty()) return "W_K";
    if (!groups.empty()) return "W_Psi" + gs;
    return "W_Psi";
  }
  if (G.num_vertices() == 1) return "W_EF";
  if (G.num_vertices() == 2) {
    bool loop = false;
    for (auto& e : G.edges) loop = loop || e[0].v == e[1].v;
    return loop ? "W_GH" : "W_EF";
  }
  return "W_GH";
}

std::string due_type(const Ambient& A, const TautMonomial& m) {
  const StableGraph& G = m.graph();
  if (G.codim() == 1) {
    for (auto& [n, h] : G.legs)
      if (h.psi) return A.has(n) ? "W_psiP" : "W_psiS";
    return "W_psi";
  }
  if (G.codim() == 2) {
    int V = G.num_vertices();
    if (V == 1) return "W_F";
    if (V == 2) {
      for (auto& e : G.edges)
        if (e[0].v == e[1].v) return "W_H(" + std::to_string(G.genus[e[0].v]) + ")";
      return "W_E";
    }
    std::vector<int> deg(3, 0);
    for (auto& e : G.edges) ++deg[e[0].v], ++deg[e[1].v];
    int mid = static_cast<int>(std::find(deg.begin(), deg.end(), 2) - deg.begin());
    int gm = G.genus[mid];
    if (gm == 2) return "W_G(0,2)";
    if (gm == 1) return "W_G(1,1)";
    for (int v = 0; v < 3; ++v)
      if (v != mid && G.genus[v] == 2) return "W_G(2,0)";
    return "W_G(1,0)";
  }
  return "other";
}

// Fills row/column metadata and the diagonal blocks of a report. Each block
// pairs a row type with the column types it is read against.
void fill_blocks(RankReport& R, const std::vector<std::tuple<std::string, std::string, std::set<std::string>>>& spec) {
  for (auto& [label, type, cols] : spec) {
    std::vector<int> ri, ci;
    for (int i = 0; i < R.matrix.rows(); ++i)
      if (R.row_types[i] == type) ri.push_back(i);
    for (int j = 0; j < R.matrix.cols(); ++j)
      if (cols.count(R.col_types[j])) ci.push_back(j);
    BlockRank b{label, type, static_cast<int>(ri.size()), static_cast<int>(ci.size()), 0};
    if (!ri.empty() && !ci.empty()) b.rank = R.matrix.block(ri, ci).rank();
    R.blocks.push_back(b);
  }
  R.rank = R.matrix.rank();
}

TautExpression class_expr(const Ambient& A, const BasisClass& b) {
  TautExpression e(A);
  e.add(b.m, b.scale);
  return e;
}

// Coordinates of the chosen block of a pulled-back class; factor_pick selects
// the factor that carries the degree.
QVec pulled_coords(const TautExpression& e, const Divisor& D, int degree,
                   const std::function<int(const std::vector<Ambient>&)>& factor_pick) {
  auto tc = tensor_coordinates(boundary_pullback(e, D));
  if (tc.candidate) throw std::runtime_error("relation candidate in a target: " + tc.residual);
  if (tc.factors.size() == 1) {
    auto it = tc.blocks.find({degree, 0});
    return it == tc.blocks.end() ? QVec{} : it->second;
  }
  int k = factor_pick(tc.factors);
  auto it = tc.blocks.find(k == 0 ? std::pair{degree, 0} : std::pair{0, degree});
  return it == tc.blocks.end() ? QVec{} : it->second;
}

}  // namespace

RankReport piudisette_report(const Ambient& A, const std::vector<std::string>* I) {
  if (A.g < 2) throw std::invalid_argument("piudisette_report: needs g >= 2");
  RankReport R;
  R.lemma = "piudisette";
  R.ambient = A;
  std::set<std::string> inI(A.P.begin(), A.P.end());
  if (I) inI = std::set<std::string>(I->begin(), I->end());
  GroupOf group = [&](const std::string& x) -> std::string {
    if (inI.count(x)) return "P";
    return A.has(x) ? "J" : "O";
  };
  Divisor D = make_divisor(A, true);
  Ambient T = factor_ambients(A, D)[0];
  const Catalog& src = catalog(A, 2);
  const Catalog& tgt = catalog(T, 2);
  std::vector<TautExpression> rows;
  for (int j : surviving_classes(src)) {
    auto& b = src.basis().classes[j];
    rows.push_back(class_expr(A, b));
    R.row_names.push_back(b.name);
    R.row_types.push_back(piudisette_type(b.m, group));
  }
  for (auto& b : tgt.basis().classes) {
    R.col_names.push_back(b.name);
    R.col_types.push_back(piudisette_type(b.m, group));
  }
  int nt = static_cast<int>(tgt.basis().classes.size());
  R.matrix = matrix_of_map(rows, [&](const TautExpression& e) { return pulled_coords(e, D, 2, nullptr); }, nt);
  fill_blocks(R, {{"A", "K", {"K"}},
                  {"B", "Psi_P", {"Psi_P"}},
                  {"C", "W_K", {"W_K"}},
                  {"D", "W_Psi", {"W_Psi"}},
                  {"E", "W_PsiP", {"W_PsiP"}},
                  {"F", "W_EF", {"W_EF"}},
                  {"G", "W_GH", {"W_GH"}}});
  if (inI.size() != A.P.size())
    fill_blocks(R, {{"B'", "Psi_J", {"Psi_J"}}, {"E'", "W_PsiJ", {"W_PsiJ"}}});
  return R;
}

RankReport due_report(const Ambient& A) {
  if (A.g != 2) throw std::invalid_argument("due_report: genus must be 2");
  if (A.P.size() < 3) throw std::invalid_argument("due_report: needs |P| >= 3");
  RankReport R;
  R.lemma = "due";
  R.ambient = A;
  const Catalog& src = catalog(A, 2);
  std::vector<TautExpression> rows;
  for (int j : surviving_classes(src)) {
    auto& b = src.basis().classes[j];
    rows.push_back(class_expr(A, b));
    R.row_names.push_back(b.name);
    R.row_types.push_back(due_type(A, b.m));
  }
  struct Target {
    Divisor D;
    int offset;
  };
  std::vector<Target> targets;
  int nt = 0;
  for (size_t i = 0; i < A.P.size(); ++i)
    for (size_t j = i + 1; j < A.P.size(); ++j) {
      Divisor D = make_divisor(A, false, 0, {A.P[i], A.P[j]});
      Ambient T;
      for (auto& f : factor_ambients(A, D))
        if (f.g == 2) T = f;
      targets.push_back({D, nt});
      for (auto& b : catalog(T, 2).basis().classes) {
        R.col_names.push_back(A.P[i] + A.P[j] + ":" + b.name);
        R.col_types.push_back(due_type(A, b.m));
      }
      nt += static_cast<int>(catalog(T, 2).basis().classes.size());
    }
  auto genus2 = [](const std::vector<Ambient>& f) { return f[0].g == 2 ? 0 : 1; };
  R.matrix = matrix_of_map(
      rows,
      [&](const TautExpression& e) {
        QVec out;
        for (auto& t : targets)
          for (auto& [c, x] : pulled_coords(e, t.D, 2, genus2)) out[t.offset + c] = x;
        return out;
      },
      nt);
  fill_blocks(R, {{"A", "W_F", {"W_F"}},
                  {"B", "W_E", {"W_E"}},
                  {"C", "W_H(0)", {"W_H(0)"}},
                  {"D", "W_G(1,0)", {"W_G(1,0)"}},
                  {"E", "W_G(0,2)", {"W_G(0,2)", "W_psiS"}},
                  {"F", "W_G(2,0)", {"W_G(2,0)"}},
                  {"G", "W_H(1)", {"W_H(1)"}},
                  {"H", "W_G(1,1)", {"W_G(1,1)"}},
                  {"I", "W_psi", {"W_psi"}},
                  {"L", "W_psiP", {"W_psiP"}}});
  return R;
}

RankReport inj0h2_report(const Ambient& A) {
  if (A.g != 0) throw std::invalid_argument("inj0h2_report: genus must be 0");
  if (A.P.size() < 5) throw std::invalid_argument("inj0h2_report: needs |P| >= 5");
  RankReport R;
  R.lemma = "inj0h2";
  R.ambient = A;
  const Catalog& src = catalog(A, 1);
  std::vector<TautExpression> rows;
  for (int j : surviving_classes(src)) {
    auto& b = src.basis().classes[j];
    rows.push_back(class_expr(A, b));
    R.row_names.push_back(b.name);
    R.row_types.push_back("H2");
  }
  std::vector<std::pair<Divisor, int>> targets;
  int nt = 0;
  const std::string& h = A.P.back();
  for (size_t i = 0; i < A.P.size(); ++i)
    for (size_t j = i + 1; j < A.P.size(); ++j) {
      if (A.P[i] == h || A.P[j] == h) continue;
      Divisor D = make_divisor(A, false, 0, {A.P[i], A.P[j]});
      Ambient T;
      for (auto& f : factor_ambients(A, D))
        if (f.P.size() + 1 == A.P.size()) T = f;
      targets.push_back({D, nt});
      for (auto& b : catalog(T, 1).basis().classes) {
        R.col_names.push_back(A.P[i] + A.P[j] + ":" + b.name);
        R.col_types.push_back("H2");
      }
      nt += static_cast<int>(catalog(T, 1).basis().classes.size());
    }
  auto big = [](const std::vector<Ambient>& f) { return f[0].P.size() >= f[1].P.size() ? 0 : 1; };
  R.matrix = matrix_of_map(
      rows,
      [&](const TautExpression& e) {
        QVec out;
        for (auto& [D, off] : targets)
          for (auto& [c, x] : pulled_coords(e, D, 1, big)) out[off + c] = x;
        return out;
      },
      nt);
  fill_blocks(R, {{"A", "H2", {"H2"}}});
  return R;
}

RankReport rank_report(const std::string& lemma, const Ambient& A) {
  if (lemma == "piudisette") return piudisette_report(A);
  if (lemma == "due") return due_report(A);
  if (lemma == "inj0h2") return inj0h2_report(A);
  throw std::invalid_argument("unknown lemma '" + lemma + "' (piudisette, due, inj0h2)");
}

namespace {

// Orbits of the Aut(Gamma) action on the degree-1 Mumford monomials of the
// open factors of a codim-1 graph. Monomials: kappa_1 on vertices of genus
// >= 3, psi at special points of vertices of genus >= 2.
int invariant_monomials(const StableGraph& G) {
  int V = G.num_vertices();
  auto half = G.edges[0];
  // automorphisms as (vertex map, edge flip), checked by brute force
  std::vector<std::pair<std::vector<int>, bool>> auts;
  std::vector<int> perm(V);
  for (int v = 0; v < V; ++v) perm[v] = v;
  do {
    bool ok = true;
    for (int v = 0; v < V; ++v) ok = ok && G.genus[perm[v]] == G.genus[v];
    for (auto& [n, h] : G.legs) ok = ok && perm[h.v] == h.v;
    if (!ok) continue;
    for (int flip = 0; flip < 2; ++flip) {
      int a = perm[half[0].v], b = perm[half[1].v];
      if (flip ? (a == half[1].v && b == half[0].v) : (a == half[0].v && b == half[1].v))
        auts.push_back({perm, flip == 1});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::string> monos;
  for (int v = 0; v < V; ++v) {
    int h = G.genus[v];
    if (h >= 3) monos.insert("k" + std::to_string(v));
    if (h < 2) continue;
    for (auto& [n, l] : G.legs)
      if (l.v == v) monos.insert("l" + n);
    for (int side = 0; side < 2; ++side)
      if (half[side].v == v) monos.insert("h" + std::to_string(side));
  }
  auto image = [&](const std::string& m, const std::pair<std::vector<int>, bool>& a) -> std::string {
    if (m[0] == 'k') return "k" + std::to_string(a.first[std::stoi(m.substr(1))]);
    if (m[0] == 'h') return "h" + std::to_string(a.second ? 1 - std::stoi(m.substr(1)) : std::stoi(m.substr(1)));
    return m;
  };
  std::set<std::string> reps;
  for (auto& m : monos) {
    std::string best = m;
    for (auto& a : auts) best = std::min(best, image(m, a));
    reps.insert(best);
  }
  return static_cast<int>(reps.size());
}

}  // namespace

CountingReport counting_identity(const Ambient& A) {
  if (A.g < 8) throw std::invalid_argument("counting_identity: needs g >= 8 (stable range of the open part)");
  CountingReport C;
  C.ambient = A;
  for (auto& b : essential_basis(A).classes) {
    const StableGraph& G = b.m.graph();
    if (G.codim() == 0) ++C.basis_mumford;
    else if (G.bare()) ++C.basis_pure;
    else ++C.basis_mixed;
  }
  C.basis_total = C.basis_mumford + C.basis_mixed + C.basis_pure;

  int n = static_cast<int>(A.P.size());
  C.mumford = 2 + 2 * n + n * (n - 1) / 2;  // kappa1^2, kappa2, kappa1 psi_i, psi_i^2, psi_i psi_j
  C.codim2_strata = static_cast<int>(enumerate_stable_graphs(A.g, A.P, 2).size());
  for (auto& G : enumerate_stable_graphs(A.g, A.P, 1)) {
    C.invariants += invariant_monomials(G);
    if (G.edges[0][0].v == G.edges[0][1].v) continue;
    for (int v = 0; v < 2; ++v)
      if (G.genus[v] == 0) {
        int k = G.valence(v);  // points on the genus-0 factor
        C.keel_relations += k * (k - 3) / 2;
      }
  }
  C.r = C.codim2_strata - C.keel_relations;
  return C;
}

}  // namespace tautring4
