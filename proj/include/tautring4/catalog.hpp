#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tautring4/essential.hpp"
#include "tautring4/linalg.hpp"

namespace tautring4 {

struct Relation {
  std::string id;
  std::string provenance;  // mumford | getzler | ... | pulled-back | structural
  TautExpression expr;     // asserted to vanish
};

// Path of the native relation file: $TAUTRING4_CATALOG if set, else the
// installed data/relations.json.
std::string default_catalog_path();

// Loads the data file ("*" sets expanded) and caches it per path.
const std::vector<Relation>& load_natives(const std::string& path = default_catalog_path());

// Natives whose (g, |P|) matches, with markings renamed positionally to A.P.
std::vector<Relation> native_relations(const Ambient& A, const std::string& path = default_catalog_path());

// Coordinates of a class modulo a catalog. coords[i] is the coefficient of
// basis.classes[i] (already divided by its scale).
struct Reduction {
  std::vector<Q> coords;
  TautExpression residual;  // part outside the basis; nonzero means relation candidate
  bool candidate() const { return !residual.is_zero(); }
};

// All known relations in one degree (1 or 2) on one ambient, as an echelon
// form over a fixed column order: non-basis monomials first, then basis
// classes in reverse order.
class Catalog {
 public:
  Catalog(const Ambient& A, int degree, bool with_natives = true, const std::string& path = default_catalog_path());

  const Ambient& ambient() const { return amb_; }
  int degree() const { return degree_; }
  const EssentialBasis& basis() const { return basis_; }
  const std::vector<Relation>& relations() const { return rels_; }
  int rank() const { return span_.rank(); }

  QVec vec(const TautExpression& e) const;  // throws on a foreign monomial
  TautExpression expr(const QVec& v) const;
  Reduction reduce(const TautExpression& e) const;
  bool contains(const TautExpression& e) const { return span_.in_span(vec(e)); }

 private:
  void add(Relation r);
  Ambient amb_;
  int degree_;
  EssentialBasis basis_;
  std::vector<TautMonomial> cols_;
  std::map<TautMonomial, int> col_of_;
  std::vector<int> basis_col_;  // basis class -> column
  Echelon span_;
  std::vector<Relation> rels_;
};

// Cached catalogs keyed by (ambient with its order, degree, natives flag).
const Catalog& catalog(const Ambient& A, int degree, bool with_natives = true);

// Degree-1 relations of M̄_{g,P} (empty for g >= 3).
std::vector<TautExpression> degree1_relations(const Ambient& A);

// Reduction of a degree-1 or degree-2 class.
Reduction reduce(const TautExpression& e);

// Coordinates of a tensor class on the factors of a divisor, split by
// bidegree. Index layout: for each factor pattern the blocks are
// (2,0) = basis of factor 0, (1,1) = pairs, (0,2) = basis of factor 1.
// Single-factor tensors only have the first block.
struct TensorCoords {
  std::vector<Ambient> factors;
  std::map<std::pair<int, int>, QVec> blocks;  // (d0, d1) -> coordinates
  bool candidate = false;
  std::string residual;  // description of the first residual met
  bool is_zero() const;
};

TensorCoords tensor_coordinates(const TensorExpr& t);  // t normalized

// The H^2 x H^2 and H^4 x H^0 parts of a restriction to a divisor.
QVec restriction_H2xH2(const TautExpression& e, const Divisor& D);
QVec restriction_H4xH0(const TautExpression& e, const Divisor& D);

// Solves for the new relation on M̄_{3,{a,b}} from the vanishing of its
// restrictions; coefficients are scaled so that kappa|delta_{3,{}} = -1.
// Starts from four maps (rational tail onto H^4 of (3,{s}), the H^2 x H^2
// parts on (2,{s}) x (1,{a,b,t}) and (2,{a,s}) x (1,{b,t}), and H^4 of
// (2,{a,s})); if those leave more than one solution, all restrictions are used.
struct Rederivation {
  EssentialBasis basis;
  std::vector<Q> coeffs;   // per basis class
  int listed_kernel_dim = 0;  // with the four maps of the uniqueness argument only
  bool completed = false;     // true when all boundary restrictions were needed
  int kernel_dim = 0;
  TautExpression relation;
};
Rederivation rederive_m32();

}  // namespace tautring4
