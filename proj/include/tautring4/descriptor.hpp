#pragma once

#include <string>

#include "tautring4/expression.hpp"

namespace tautring4 {

// Builds a class from the conventional ASCII notation, e.g.
//   "kappa1^2", "psi_a*psi_b", "psi|delta_irr", "kappa1*delta_irr",
//   "psi|delta_{2,{a}}", "delta_{1,{}}|kappa", "psi_a*delta_{0,{a,b}}",
//   "delta_F", "delta_E(1,{a})", "delta_H(0,{})", "delta_G(1,{},0,{a})".
// Factors joined by '*' are multiplied with the product engine.
// "psi|delta_irr" means xi_irr*(psi_q+psi_r)/2, which is twice the single
// normalized monomial with psi on one half of the loop.
TautExpression make_class(const Ambient& A, const std::string& descriptor);

// Bare strata by family.
StableGraph stratum_F(const Ambient& A);
StableGraph stratum_E(const Ambient& A, int a, const std::vector<std::string>& S);
StableGraph stratum_H(const Ambient& A, int a, const std::vector<std::string>& S);
StableGraph stratum_G(const Ambient& A, int a, const std::vector<std::string>& S, int b,
                      const std::vector<std::string>& T);

}  // namespace tautring4
