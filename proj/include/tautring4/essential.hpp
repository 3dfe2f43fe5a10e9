#pragma once

#include <string>
#include <vector>

#include "tautring4/expression.hpp"

namespace tautring4 {

// All monomials of algebraic degree d (0, 1 or 2) on M̄_{g,P}, in a fixed order:
// Mumford monomials first, then decorated codim-1 strata, then codim-2 strata.
std::vector<TautMonomial> generators(const Ambient& A, int degree);

// A named basis class: scale * monomial. The scale is 1 except for
// psi|delta_irr, which is twice the one-half-edge monomial.
struct BasisClass {
  TautMonomial m;
  Q scale = 1;
  std::string name;
};

struct EssentialBasis {
  Ambient ambient;
  std::vector<BasisClass> classes;
  int index_of(const TautMonomial& m) const;  // -1 when absent
};

struct Essentiality {
  bool essential = true;
  std::string reason;
};

Essentiality is_essential(const Ambient& A, const TautMonomial& m);

// B^4(g,P) for the order of A.P.
EssentialBasis essential_basis(const Ambient& A);

// Standard basis of H^2: kappa_1 (g>=3), psi_i (g>=2), all boundary divisors,
// except in genus 0 where the Keel selection for the last marking is used.
EssentialBasis degree1_basis(const Ambient& A);

// Conventional name of a monomial together with the scale relating it to
// that named class (name = scale * monomial).
BasisClass describe(const Ambient& A, const TautMonomial& m);

// Keel selection: kept iff |B| >= 3, or |B| = 2 and B precedes C.
bool keel_keep(const Ambient& A, const std::vector<std::string>& B, const std::vector<std::string>& C);

}  // namespace tautring4
