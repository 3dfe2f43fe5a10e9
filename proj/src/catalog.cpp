#include "tautring4/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "tautring4/calculus.hpp"
#include "tautring4/descriptor.hpp"

namespace tautring4 {

std::string default_catalog_path() {
  if (const char* p = std::getenv("TAUTRING4_CATALOG"); p && *p) return p;
  return TAUTRING4_DEFAULT_CATALOG;
}

namespace {

std::mutex cache_mutex;

// Markings named in a descriptor: members of {...} sets and psi_ subscripts.
std::vector<std::string> mentioned(const Ambient& A, const std::string& d) {
  std::set<std::string> toks;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] == '{') {
      size_t j = d.find('}', i);
      std::string inner = d.substr(i + 1, j - i - 1), cur;
      for (char c : inner + ",") {
        if (c == ',') toks.insert(cur), cur.clear();
        else if (c != ' ') cur += c;
      }
      i = j;
    } else if (d.compare(i, 4, "psi_") == 0) {
      size_t j = i + 4;
      while (j < d.size() && d[j] != '*' && d[j] != '^' && d[j] != '|') ++j;
      toks.insert(d.substr(i + 4, j - i - 4));
      i = j - 1;
    }
  }
  std::vector<std::string> out;
  for (auto& p : A.P)
    if (toks.count(p)) out.push_back(p);
  return out;
}

// "{*}" stands for any one marking not used elsewhere in the term; the term
// becomes the average over those choices.
std::vector<std::pair<Q, std::string>> expand_star(const Ambient& A, const Q& c, const std::string& d) {
  auto pos = d.find("{*}");
  if (pos == std::string::npos) return {{c, d}};
  auto used = mentioned(A, d);
  std::vector<std::string> free;
  for (auto& p : A.P)
    if (std::find(used.begin(), used.end(), p) == used.end()) free.push_back(p);
  if (free.empty()) throw std::invalid_argument("no marking available for '*' in " + d);
  std::vector<std::pair<Q, std::string>> out;
  Q share = c / static_cast<long>(free.size());
  for (auto& p : free) {
    std::string e = d;
    e.replace(pos, 3, "{" + p + "}");
    for (auto& x : expand_star(A, share, e)) out.push_back(x);
  }
  return out;
}

std::vector<Relation> parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open relation file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed relation file " + path + ": " + e.what());
  }
  std::vector<Relation> out;
  for (auto& r : j.at("relations")) {
    Ambient A{r.at("ambient").at(0).get<int>(), r.at("ambient").at(1).get<std::vector<std::string>>()};
    require_stable(A);
    Relation rel{r.at("id").get<std::string>(), r.at("provenance").get<std::string>(), TautExpression(A)};
    if (r.at("terms").empty()) throw std::runtime_error("relation " + rel.id + " has no terms");
    for (auto& t : r.at("terms")) {
      Q c = parse_fraction(t.at(0).get<std::string>());
      for (auto& [c2, d] : expand_star(A, c, t.at(1).get<std::string>())) rel.expr.add(make_class(A, d), c2);
    }
    // a product term may evaluate to zero already (delta_irr^2 on M̄_{1,1})
    if (!rel.expr.is_zero() && rel.expr.degree() != 2) throw std::runtime_error("relation " + rel.id + " is not of degree 2");
    out.push_back(std::move(rel));
  }
  return out;
}

TautMonomial trivial_monomial(const Ambient& A) {
  StableGraph G;
  G.add_vertex(A.g);
  for (auto& p : A.P) G.legs[p] = HalfEdge{0, 0};
  return TautMonomial(G);
}

// Relabels e along the positional map from its markings to the first
// markings of T, then forgets the remaining markings of T.
TautExpression transport(const TautExpression& e, const std::vector<std::string>& image, const Ambient& T) {
  const auto& src = e.ambient().P;
  std::map<std::string, std::string> ren;
  for (size_t i = 0; i < src.size(); ++i) ren[src[i]] = image[i];
  Ambient mid{T.g, image};
  TautExpression r = relabel(e, ren, mid);
  std::vector<std::string> rest;
  for (auto& p : T.P)
    if (std::find(image.begin(), image.end(), p) == image.end()) rest.push_back(p);
  if (!rest.empty()) r = forgetful_pullback(r, rest);
  TautExpression out(T);
  out.add(r);
  return out;
}

// All injections of a k-set into P, as ordered image lists.
std::vector<std::vector<std::string>> injections(int k, const std::vector<std::string>& P) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  std::vector<bool> used(P.size(), false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (size_t i = 0; i < P.size(); ++i)
      if (!used[i]) {
        used[i] = true;
        cur.push_back(P[i]);
        rec();
        cur.pop_back();
        used[i] = false;
      }
  };
  rec();
  return out;
}

std::vector<std::vector<std::string>> subsets(int k, const std::vector<std::string>& P) {
  std::vector<std::vector<std::string>> out;
  int n = static_cast<int>(P.size());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<std::string> S;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) S.push_back(P[i]);
    out.push_back(S);
  }
  return out;
}

}  // namespace

const std::vector<Relation>& load_natives(const std::string& path) {
  static std::map<std::string, std::vector<Relation>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, parse_file(path)).first;
  return it->second;
}

std::vector<Relation> native_relations(const Ambient& A, const std::string& path) {
  require_stable(A);
  std::vector<Relation> out;
  for (auto& r : load_natives(path)) {
    const Ambient& B = r.expr.ambient();
    if (B.g != A.g || B.P.size() != A.P.size()) continue;
    out.push_back({r.id, r.provenance, transport(r.expr, A.P, A)});
  }
  return out;
}

std::vector<TautExpression> degree1_relations(const Ambient& A) {
  require_stable(A);
  std::vector<TautExpression> out;
  auto pull = [&](const TautExpression& e, const std::vector<std::string>& image) {
    out.push_back(transport(e, image, A));
  };
  if (A.g == 0) {
    for (auto& T : subsets(3, A.P)) {
      Ambient B{0, {"1", "2", "3"}};
      pull(make_class(B, "kappa1"), T);
      for (auto& p : B.P) pull(make_class(B, "psi_" + p), T);
    }
  } else if (A.g == 1) {
    Ambient B{1, {"1"}};
    TautExpression r1 = make_class(B, "psi_1") - make_class(B, "delta_irr") * Q(1, 12);
    TautExpression r2 = make_class(B, "kappa1") - make_class(B, "psi_1");
    for (auto& p : A.P) {
      pull(r1, {p});
      pull(r2, {p});
    }
  } else if (A.g == 2) {
    Ambient B{2, {}};
    pull(make_class(B, "kappa1") - make_class(B, "delta_irr") * Q(1, 5) - make_class(B, "delta_{1,{}}") * Q(7, 5), {});
  }
  return out;
}

Catalog::Catalog(const Ambient& A, int degree, bool with_natives, const std::string& path)
    : amb_(A), degree_(degree) {
  require_stable(A);
  if (degree != 1 && degree != 2) throw std::invalid_argument("catalogs exist in degree 1 and 2 only");
  basis_ = degree == 1 ? degree1_basis(A) : essential_basis(A);
  auto gens = generators(A, degree);
  std::set<TautMonomial> in_basis;
  for (auto& b : basis_.classes) in_basis.insert(b.m);
  for (auto& m : gens)
    if (!in_basis.count(m)) col_of_[m] = static_cast<int>(cols_.size()), cols_.push_back(m);
  basis_col_.assign(basis_.classes.size(), -1);
  for (size_t i = basis_.classes.size(); i-- > 0;) {
    basis_col_[i] = static_cast<int>(cols_.size());
    col_of_[basis_.classes[i].m] = basis_col_[i];
    cols_.push_back(basis_.classes[i].m);
  }

  if (degree == 1) {
    for (auto& r : degree1_relations(A)) add({"degree1", "pulled-back", r});
    return;
  }

  // dimension vanishing
  for (auto& m : gens)
    if (vanishes_by_dimension(m.graph())) {
      TautExpression e(A);
      e.add(m, 1);
      add({"dim", "dimension", e});
    }
  // degree-1 relations on boundary divisors, pushed forward
  for (auto& G : enumerate_stable_graphs(A.g, A.P, 1)) {
    Divisor D = divisor_from_graph(A, G);
    auto F = factor_ambients(A, D);
    for (size_t k = 0; k < F.size(); ++k)
      for (auto& rho : degree1_relations(F[k])) {
        TensorExpr t;
        t.factors = F;
        for (auto& [m, c] : rho.terms()) {
          std::vector<TautMonomial> key;
          for (size_t l = 0; l < F.size(); ++l) key.push_back(l == k ? m : trivial_monomial(F[l]));
          t.add(key, c);
        }
        add({"pushforward", "keel-pushforward", pushforward(A, t, D)});
      }
  }
  // products of degree-1 relations with degree-1 classes
  auto rho1 = degree1_relations(A);
  if (!rho1.empty()) {
    auto g1 = generators(A, 1);
    for (auto& rho : rho1)
      for (auto& d : g1) {
        TautExpression e(A);
        e.add(d, 1);
        add({"product", "structural", multiply(rho, e)});
      }
  }
  if (!with_natives) return;
  for (auto& r : load_natives(path)) {
    const Ambient& B = r.expr.ambient();
    if (B.g != A.g || B.P.size() > A.P.size()) continue;
    for (auto& image : injections(static_cast<int>(B.P.size()), A.P))
      add({r.id, B.P.size() == A.P.size() ? r.provenance : "pulled-back", transport(r.expr, image, A)});
  }
}

void Catalog::add(Relation r) {
  if (r.expr.is_zero()) return;
  if (span_.insert(vec(r.expr))) rels_.push_back(std::move(r));
}

QVec Catalog::vec(const TautExpression& e) const {
  QVec v;
  for (auto& [m, c] : e.terms()) {
    auto it = col_of_.find(m);
    if (it == col_of_.end()) {
      if (vanishes_by_dimension(m.graph())) continue;
      throw std::invalid_argument("monomial outside the degree-" + std::to_string(degree_) + " generators of " +
                                  amb_.text() + ": " + describe(amb_, m).name);
    }
    v[it->second] += c;
    if (v[it->second] == 0) v.erase(it->second);
  }
  return v;
}

TautExpression Catalog::expr(const QVec& v) const {
  TautExpression e(amb_);
  for (auto& [c, x] : v) e.add(cols_.at(c), x);
  return e;
}

Reduction Catalog::reduce(const TautExpression& e) const {
  if (!e.is_zero() && e.degree() != degree_)
    throw std::invalid_argument("reduce: expected degree " + std::to_string(degree_));
  TautExpression f(amb_);
  f.add(e);
  QVec nf = span_.reduce(vec(f));
  Reduction r{std::vector<Q>(basis_.classes.size(), 0), TautExpression(amb_)};
  std::vector<int> basis_of(cols_.size(), -1);
  for (size_t i = 0; i < basis_col_.size(); ++i) basis_of[basis_col_[i]] = static_cast<int>(i);
  for (auto& [c, x] : nf) {
    int b = basis_of[c];
    if (b >= 0) r.coords[b] = x / basis_.classes[b].scale;
    else r.residual.add(cols_[c], x);
  }
  return r;
}

const Catalog& catalog(const Ambient& A, int degree, bool with_natives) {
  using Key = std::tuple<int, std::vector<std::string>, int, bool>;
  static std::map<Key, std::unique_ptr<Catalog>> cache;
  static std::recursive_mutex m;
  std::lock_guard<std::recursive_mutex> lock(m);
  Key k{A.g, A.P, degree, with_natives};
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, std::make_unique<Catalog>(A, degree, with_natives)).first;
  return *it->second;
}

Reduction reduce(const TautExpression& e) {
  int d = e.is_zero() ? 2 : e.degree();
  return catalog(e.ambient(), d).reduce(e);
}

bool TensorCoords::is_zero() const {
  for (auto& [k, v] : blocks)
    if (!v.empty()) return false;
  return !candidate;
}

TensorCoords tensor_coordinates(const TensorExpr& t) {
  TensorCoords out;
  out.factors = t.factors;
  size_t nf = t.factors.size();
  std::vector<std::map<TautMonomial, std::vector<Q>>> memo(nf);
  auto coords_of = [&](size_t k, const TautMonomial& m) -> const std::vector<Q>& {
    auto it = memo[k].find(m);
    if (it != memo[k].end()) return it->second;
    TautExpression e(t.factors[k]);
    e.add(m, 1);
    Reduction r = catalog(t.factors[k], m.degree()).reduce(e);
    if (r.candidate() && !out.candidate) {
      out.candidate = true;
      out.residual = t.factors[k].text() + ": " + describe(t.factors[k], m).name;
    }
    return memo[k].emplace(m, r.coords).first->second;
  };
  for (auto& [key, c] : t.terms) {
    int d0 = key[0].degree(), d1 = nf > 1 ? key[1].degree() : 0;
    QVec& blk = out.blocks[{d0, d1}];
    auto add = [&](int i, const Q& x) {
      if (x == 0) return;
      blk[i] += x;
      if (blk[i] == 0) blk.erase(i);
    };
    if (d0 == 0 && d1 == 0) {
      add(0, c);
    } else if (d1 == 0) {
      auto& u = coords_of(0, key[0]);
      for (size_t i = 0; i < u.size(); ++i) add(static_cast<int>(i), c * u[i]);
    } else if (d0 == 0) {
      auto& v = coords_of(1, key[1]);
      for (size_t j = 0; j < v.size(); ++j) add(static_cast<int>(j), c * v[j]);
    } else {
      auto& u = coords_of(0, key[0]);
      auto& v = coords_of(1, key[1]);
      for (size_t i = 0; i < u.size(); ++i)
        if (u[i] != 0)
          for (size_t j = 0; j < v.size(); ++j) add(static_cast<int>(i * v.size() + j), c * u[i] * v[j]);
    }
  }
  for (auto it = out.blocks.begin(); it != out.blocks.end();)
    it = it->second.empty() ? out.blocks.erase(it) : std::next(it);
  return out;
}

QVec restriction_H2xH2(const TautExpression& e, const Divisor& D) {
  auto tc = tensor_coordinates(boundary_pullback(e, D));
  if (tc.candidate) throw std::runtime_error("restriction leaves a relation candidate: " + tc.residual);
  auto it = tc.blocks.find({1, 1});
  return it == tc.blocks.end() ? QVec{} : it->second;
}

QVec restriction_H4xH0(const TautExpression& e, const Divisor& D) {
  auto tc = tensor_coordinates(boundary_pullback(e, D));
  if (tc.candidate) throw std::runtime_error("restriction leaves a relation candidate: " + tc.residual);
  auto it = tc.blocks.find({2, 0});
  return it == tc.blocks.end() ? QVec{} : it->second;
}

Rederivation rederive_m32() {
  Ambient A{3, {"a", "b"}};
  Rederivation out;
  out.basis = essential_basis(A);
  const auto& cls = out.basis.classes;
  // the four restriction maps used to pin the relation down
  // each map: a divisor, the genus of the factor that carries H^4 (or -1 for
  // the H^2 x H^2 part)
  struct Map {
    Divisor D;
    int h4_genus;
  };
  std::vector<Map> maps{
      {make_divisor(A, false, 0, {"a", "b"}), 3},  // rational tail, onto H^4 of (3,{s})
      {make_divisor(A, false, 2, {}), -1},         // (2,{s}) x (1,{a,b,t})
      {make_divisor(A, false, 2, {"a"}), -1},      // (2,{a,s}) x (1,{b,t})
      {make_divisor(A, false, 2, {"a"}), 2},       // onto H^4 of (2,{a,s})
  };
  RationalMatrix M(0, static_cast<int>(cls.size()));
  std::vector<std::vector<QVec>> images(maps.size());
  for (size_t j = 0; j < cls.size(); ++j) {
    TautExpression e(A);
    e.add(cls[j].m, cls[j].scale);
    for (size_t k = 0; k < maps.size(); ++k) {
      auto tc = tensor_coordinates(boundary_pullback(e, maps[k].D));
      if (tc.candidate) throw std::runtime_error("rederive_m32: relation candidate in a target: " + tc.residual);
      std::pair<int, int> want{1, 1};
      if (maps[k].h4_genus >= 0)
        want = tc.factors[0].g == maps[k].h4_genus ? std::pair{2, 0} : std::pair{0, 2};
      auto it = tc.blocks.find(want);
      images[k].push_back(it == tc.blocks.end() ? QVec{} : it->second);
    }
  }
  for (size_t k = 0; k < maps.size(); ++k) {
    int rows = 0;
    for (auto& v : images[k])
      for (auto& [i, x] : v) rows = std::max(rows, i + 1);
    std::vector<QVec> R(rows);
    for (size_t j = 0; j < cls.size(); ++j)
      for (auto& [i, x] : images[k][j]) R[i][static_cast<int>(j)] = x;
    for (auto& r : R) M.append_row(r);
  }
  auto ker = M.kernel();
  out.listed_kernel_dim = static_cast<int>(ker.size());
  if (ker.size() != 1) {
    // the listed maps leave freedom; close the system with every block of
    // every boundary restriction
    for (auto& G : enumerate_stable_graphs(A.g, A.P, 1)) {
      Divisor D = divisor_from_graph(A, G);
      std::map<std::pair<std::pair<int, int>, int>, QVec> R;
      for (size_t j = 0; j < cls.size(); ++j) {
        TautExpression e(A);
        e.add(cls[j].m, cls[j].scale);
        auto tc = tensor_coordinates(boundary_pullback(e, D));
        if (tc.candidate) throw std::runtime_error("rederive_m32: relation candidate in a target: " + tc.residual);
        for (auto& [blk, v] : tc.blocks)
          for (auto& [i, x] : v) R[{blk, i}][static_cast<int>(j)] = x;
      }
      for (auto& [k, r] : R) M.append_row(r);
    }
    ker = M.kernel();
    out.completed = true;
  }
  out.kernel_dim = static_cast<int>(ker.size());
  if (ker.size() != 1)
    throw std::runtime_error("rederive_m32: solution space has dimension " + std::to_string(ker.size()));
  int kd = -1;
  for (size_t j = 0; j < cls.size(); ++j)
    if (cls[j].name == "kappa|delta_{3,{}}") kd = static_cast<int>(j);
  if (kd < 0 || !ker[0].count(kd) || ker[0].at(kd) == 0)
    throw std::runtime_error("rederive_m32: kappa|delta_{3,{}} does not occur in the solution");
  Q scale = Q(-1) / ker[0].at(kd);
  out.coeffs.assign(cls.size(), 0);
  out.relation = TautExpression(A);
  for (auto& [j, x] : ker[0]) {
    out.coeffs[j] = x * scale;
    out.relation.add(cls[j].m, out.coeffs[j] * cls[j].scale);
  }
  return out;
}

}  // namespace tautring4
