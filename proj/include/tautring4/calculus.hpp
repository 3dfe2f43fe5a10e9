#pragma once

#include <string>
#include <vector>

#include "tautring4/expression.hpp"

namespace tautring4 {

// base, base', base'', ... whichever is not yet a marking of A
std::string fresh_label(const Ambient& A, const std::string& base);

// Divisor with fresh auxiliary names (q,r for irr; s,t otherwise).
Divisor make_divisor(const Ambient& A, bool irr, int a = 0, std::vector<std::string> S = {});
Divisor divisor_from_graph(const Ambient& A, const StableGraph& G);

// Factor spaces of M̄_D, in the order used by TensorExpr keys.
std::vector<Ambient> factor_ambients(const Ambient& A, const Divisor& D);

// A vertex carrying more decoration than its dimension: the class is zero.
bool vanishes_by_dimension(const StableGraph& G);

// Unnormalized engines.
TensorExpr boundary_pullback_raw(const Ambient& A, const RawExpr& e, const Divisor& D);
RawExpr pushforward_raw(const TensorExpr& t, const Divisor& D);
RawExpr multiply_raw(const RawExpr& a, const RawExpr& b);
RawExpr forget_raw(const RawExpr& e, const std::string& x);

// Normalized interfaces.
TautExpression product_deg2(const TautExpression& a, const TautExpression& b);
TautExpression multiply(const TautExpression& a, const TautExpression& b);  // one side of degree <= 1 divisor type
TensorExpr boundary_pullback(const TautExpression& e, const Divisor& D);  // normalized factor coefficients
TautExpression pushforward(const Ambient& A, const TensorExpr& t, const Divisor& D);  // t normalized
TautExpression forgetful_pullback(const TautExpression& e, const std::vector<std::string>& xs);

TensorExpr tensor_to_raw(const TensorExpr& t);
TensorExpr tensor_to_normalized(const TensorExpr& t);

}  // namespace tautring4
