#pragma once

#include <map>
#include <string>
#include <vector>

#include "tautring4/graph.hpp"
#include "tautring4/rational.hpp"

namespace tautring4 {

// (g, P) with P in its total order. Auxiliary legs are appended at the end.
struct Ambient {
  int g = 0;
  std::vector<std::string> P;

  bool stable() const { return g >= 0 && 2 * g - 2 + static_cast<int>(P.size()) > 0; }
  int dim() const { return 3 * g - 3 + static_cast<int>(P.size()); }
  bool has(const std::string& x) const;
  int rank(const std::string& x) const;  // position in P, or |P| if absent
  Ambient with(const std::vector<std::string>& extra) const;
  Ambient without(const std::vector<std::string>& gone) const;
  std::string text() const;
  bool operator==(const Ambient&) const = default;
  bool operator<(const Ambient& o) const { return std::tie(g, P) < std::tie(o.g, o.P); }
};

void require_stable(const Ambient& A);

// A decorated stable graph in canonical orientation.
class TautMonomial {
 public:
  TautMonomial() = default;
  explicit TautMonomial(const StableGraph& G);

  const StableGraph& graph() const { return g_; }
  const std::vector<int>& code() const { return code_; }
  long graph_aut() const { return aut_; }
  int degree() const { return g_.degree(); }
  int codim() const { return g_.codim(); }

  std::strong_ordering operator<=>(const TautMonomial& o) const;
  bool operator==(const TautMonomial& o) const { return (*this <=> o) == 0; }

 private:
  StableGraph g_;
  std::vector<int> code_;
  long aut_ = 1;
};

// Unnormalized combination: coefficient c on m means c * xi_{Gamma*}(p).
using RawExpr = std::map<TautMonomial, Q>;

void raw_add(RawExpr& e, const TautMonomial& m, const Q& c);
void raw_add(RawExpr& e, const StableGraph& G, const Q& c);
void raw_add(RawExpr& e, const RawExpr& f, const Q& c = 1);

// A tautological class on M̄_{g,P}. Coefficient c on m means c * p|delta_Gamma,
// i.e. c * xi_{Gamma*}(p) / |Aut Gamma|.
class TautExpression {
 public:
  TautExpression() = default;
  explicit TautExpression(Ambient A) : amb_(std::move(A)) {}

  const Ambient& ambient() const { return amb_; }
  const std::map<TautMonomial, Q>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 when empty

  void add(const TautMonomial& m, const Q& c);
  void add(const StableGraph& G, const Q& c) { add(TautMonomial(G), c); }
  void add(const TautExpression& e, const Q& c = 1);

  TautExpression operator+(const TautExpression& o) const;
  TautExpression operator-(const TautExpression& o) const;
  TautExpression operator*(const Q& c) const;
  bool operator==(const TautExpression& o) const { return amb_ == o.amb_ && terms_ == o.terms_; }

  RawExpr raw() const;
  static TautExpression from_raw(const Ambient& A, const RawExpr& r);

 private:
  void check(const TautMonomial& m) const;
  Ambient amb_;
  std::map<TautMonomial, Q> terms_;
};

// Merges isomorphic terms of a loose term list; rejects mixed degree.
TautExpression normalize(const Ambient& A, const std::vector<std::pair<StableGraph, Q>>& terms);
TautExpression normalize(const TautExpression& e);

TautExpression relabel(const TautExpression& e, const std::map<std::string, std::string>& ren,
                       const Ambient& target);

// Raw classes on a product of factor spaces, one monomial per factor.
struct TensorExpr {
  std::vector<Ambient> factors;
  std::map<std::vector<TautMonomial>, Q> terms;
  void add(const std::vector<TautMonomial>& key, const Q& c);
  bool is_zero() const { return terms.empty(); }
};

}  // namespace tautring4
