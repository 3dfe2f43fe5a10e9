#pragma once

#include <string>

#include "json.hpp"
#include "tautring4/catalog.hpp"

namespace tautring4 {

using json = nlohmann::json;

// Graph format {"v":[g0,g1,...],"e":[[vi,vj],...],"legs":{"a":vi,...}};
// loops repeat the vertex index. Decorations are not part of it.
json graph_to_json(const StableGraph& G);
StableGraph graph_from_json(const json& j);

// Marking list "a,b,c" (empty string for none).
std::vector<std::string> split_markings(const std::string& csv);

// One expression term:
//   {"coeff":"p/q","graph":{...},"psi":{"a":1,"e0.1":1},"kappa":{"0":[1]}}
// psi keys are leg names or "e<k>.<side>" for the sides of edge k (side in
// the order of the "e" pair); kappa keys are vertex indices. A term can also
// name a class in descriptor notation: {"coeff":"p/q","class":"kappa2"}.
//
// Expression file: {"ambient":[g,[P...]],"terms":[...]}. A bare list of
// terms is accepted too; the ambient is then read off the first graph with
// the markings in sorted order.
json expression_to_json(const TautExpression& e);
TautExpression expression_from_json(const json& j);
TautExpression read_expression(const std::string& path);

json tensor_to_json(const TensorExpr& t);

// "p/q  name" lines using the conventional class names; "0" for zero.
std::string render(const TautExpression& e);

// Coordinates against a basis, zero entries omitted.
json coords_to_json(const EssentialBasis& B, const std::vector<Q>& coords);

// Catalog entry: the expression format plus provenance and ambient headers.
json relation_to_json(const Relation& r);

}  // namespace tautring4
