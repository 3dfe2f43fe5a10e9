#include <algorithm>
#include <sstream>

#include "tautring4/expression.hpp"

namespace tautring4 {

bool Ambient::has(const std::string& x) const { return std::find(P.begin(), P.end(), x) != P.end(); }

int Ambient::rank(const std::string& x) const {
  return static_cast<int>(std::find(P.begin(), P.end(), x) - P.begin());
}

Ambient Ambient::with(const std::vector<std::string>& extra) const {
  Ambient A = *this;
  for (auto& x : extra) {
    if (A.has(x)) throw GraphError("marking '" + x + "' already present");
    A.P.push_back(x);
  }
  return A;
}

Ambient Ambient::without(const std::vector<std::string>& gone) const {
  Ambient A{g, {}};
  for (auto& x : P)
    if (std::find(gone.begin(), gone.end(), x) == gone.end()) A.P.push_back(x);
  return A;
}

std::string Ambient::text() const {
  std::ostringstream os;
  os << "(" << g << ",{";
  for (size_t i = 0; i < P.size(); ++i) os << (i ? "," : "") << P[i];
  os << "})";
  return os.str();
}

void require_stable(const Ambient& A) {
  if (!A.stable()) throw GraphError("unstable (g,P) = " + A.text());
}

TautMonomial::TautMonomial(const StableGraph& G) {
  auto cf = canonical_form(G);
  g_ = std::move(cf.graph);
  code_ = std::move(cf.code);
  aut_ = g_.bare() ? cf.aut : aut_count(g_);
}

std::strong_ordering TautMonomial::operator<=>(const TautMonomial& o) const {
  if (auto c = code_ <=> o.code_; c != 0) return c;
  auto a = g_.legs.begin(), b = o.g_.legs.begin();
  for (; a != g_.legs.end() && b != o.g_.legs.end(); ++a, ++b)
    if (auto c = a->first <=> b->first; c != 0) return c;
  return g_.legs.size() <=> o.g_.legs.size();
}

void raw_add(RawExpr& e, const TautMonomial& m, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = e.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

void raw_add(RawExpr& e, const StableGraph& G, const Q& c) {
  if (c != 0) raw_add(e, TautMonomial(G), c);
}

void raw_add(RawExpr& e, const RawExpr& f, const Q& c) {
  if (c == 0) return;
  for (auto& [m, x] : f) raw_add(e, m, x * c);
}

void TensorExpr::add(const std::vector<TautMonomial>& key, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = terms.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace tautring4
