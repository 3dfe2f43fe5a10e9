#include <set>

#include "tautring4/expression.hpp"

namespace tautring4 {

int TautExpression::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

void TautExpression::check(const TautMonomial& m) const {
  const StableGraph& G = m.graph();
  if (G.total_genus() != amb_.g) throw GraphError("term genus differs from ambient " + amb_.text());
  if (G.legs.size() != amb_.P.size()) throw GraphError("term markings differ from ambient " + amb_.text());
  for (auto& p : amb_.P)
    if (!G.legs.count(p)) throw GraphError("term lacks marking '" + p + "' of ambient " + amb_.text());
  if (!G.connected()) throw GraphError("term graph is disconnected");
  if (!G.is_stable()) throw GraphError("term graph is unstable");
  if (!terms_.empty() && m.degree() != degree()) throw GraphError("mixed degree in one expression");
}

void TautExpression::add(const TautMonomial& m, const Q& c) {
  if (c == 0) return;
  check(m);
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TautExpression::add(const TautExpression& e, const Q& c) {
  if (!(e.amb_ == amb_)) {
    if (e.amb_.g != amb_.g || std::set<std::string>(e.amb_.P.begin(), e.amb_.P.end()) !=
                                  std::set<std::string>(amb_.P.begin(), amb_.P.end()))
      throw GraphError("adding expressions on different ambients " + amb_.text() + " and " + e.amb_.text());
  }
  for (auto& [m, x] : e.terms_) add(m, x * c);
}

TautExpression TautExpression::operator+(const TautExpression& o) const {
  TautExpression r = *this;
  r.add(o, 1);
  return r;
}

TautExpression TautExpression::operator-(const TautExpression& o) const {
  TautExpression r = *this;
  r.add(o, -1);
  return r;
}

TautExpression TautExpression::operator*(const Q& c) const {
  TautExpression r(amb_);
  if (c != 0)
    for (auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
  return r;
}

RawExpr TautExpression::raw() const {
  RawExpr r;
  for (auto& [m, c] : terms_) r.emplace(m, c / m.graph_aut());
  return r;
}

TautExpression TautExpression::from_raw(const Ambient& A, const RawExpr& r) {
  TautExpression e(A);
  for (auto& [m, c] : r) e.add(m, c * m.graph_aut());
  return e;
}

TautExpression normalize(const Ambient& A, const std::vector<std::pair<StableGraph, Q>>& terms) {
  TautExpression e(A);
  int deg = -1;
  for (auto& [G, c] : terms) {
    G.validate();
    if (deg < 0) deg = G.degree();
    if (G.degree() != deg) throw GraphError("normalize: mixed degree");
    e.add(G, c);
  }
  return e;
}

TautExpression normalize(const TautExpression& e) {
  TautExpression r(e.ambient());
  for (auto& [m, c] : e.terms()) r.add(TautMonomial(m.graph()), c);
  return r;
}

TautExpression relabel(const TautExpression& e, const std::map<std::string, std::string>& ren,
                       const Ambient& target) {
  TautExpression r(target);
  for (auto& [m, c] : e.terms()) r.add(relabel_legs(m.graph(), ren), c);
  return r;
}

}  // namespace tautring4
