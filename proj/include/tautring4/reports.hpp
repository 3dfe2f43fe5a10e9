#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tautring4/catalog.hpp"

namespace tautring4 {

// Matrix of a linear map given on a list of source classes: row i holds the
// target coordinates of f(source[i]).
RationalMatrix matrix_of_map(const std::vector<TautExpression>& source,
                             const std::function<QVec(const TautExpression&)>& f, int target_dim);

// Classes of a catalog that are not eliminated by its relations, i.e. a basis
// of the quotient, in basis order.
std::vector<int> surviving_classes(const Catalog& c);

struct BlockRank {
  std::string label;  // diagonal block letter
  std::string type;   // subspace the rows span
  int rows = 0, cols = 0, rank = 0;
  bool maximal() const { return rank == rows; }
};

struct RankReport {
  std::string lemma;
  Ambient ambient;
  std::vector<BlockRank> blocks;
  std::vector<std::string> row_names, col_names;
  std::vector<std::string> row_types, col_types;
  RationalMatrix matrix;
  int rank = 0;
  bool injective() const { return rank == matrix.rows(); }
  bool blocks_maximal() const;
};

// xi_irr^* : H^4(g,P) -> H^4(g-1, P u {q,r}) in block form. I is the part of
// P treated as Psi_I (default: all of P); O = {q,r}.
RankReport piudisette_report(const Ambient& A, const std::vector<std::string>* I = nullptr);

// f = {f_ij^*} on the genus-2 quotient space into the sum over pairs of
// H^4(2, P \ {i,j} u {t}) (rational tail with i, j glued on).
RankReport due_report(const Ambient& A);

// H^2(0,P) -> sum over pairs {x,y} not containing the last marking of
// H^2(0, P \ {x,y} u {t}).
RankReport inj0h2_report(const Ambient& A);

// Dispatch on "piudisette", "due", "inj0h2".
RankReport rank_report(const std::string& lemma, const Ambient& A);

// Both sides of the generation count for g >= 8. The basis side splits
// essential_basis by kind; the bound side counts strata and invariants.
struct CountingReport {
  Ambient ambient;
  int basis_total = 0, basis_mumford = 0, basis_mixed = 0, basis_pure = 0;
  int codim2_strata = 0, keel_relations = 0, r = 0;
  int mumford = 0;     // degree-2 Mumford monomials on the open part
  int invariants = 0;  // Aut-invariant degree-1 Mumford monomials over codim-1 strata
  int bound_total() const { return r + mumford + invariants; }
  bool ok() const {
    return basis_total == bound_total() && basis_pure == r && basis_mumford == mumford &&
           basis_mixed == invariants;
  }
};
CountingReport counting_identity(const Ambient& A);

}  // namespace tautring4
