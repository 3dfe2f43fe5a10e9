#include "doctest.h"
#include "tautring4/descriptor.hpp"
#include "tautring4/essential.hpp"
#include "tautring4/io.hpp"

using namespace tautring4;

namespace {
const std::string data = TAUTRING4_TEST_DATA;
}

TEST_SUITE("io") {
  TEST_CASE("expression round trip") {
    for (auto A : {Ambient{2, {"a", "b"}}, Ambient{3, {}}, Ambient{1, {"a", "b", "c"}}}) {
      TautExpression e(A);
      int k = 1;
      for (auto& m : generators(A, 2)) e.add(m, parse_fraction(std::to_string(k++) + "/7"));
      CAPTURE(A.text());
      CHECK(expression_from_json(expression_to_json(e)) == e);
      CHECK(expression_from_json(json::parse(expression_to_json(e).dump())) == e);
    }
  }

  TEST_CASE("graph round trip") {
    for (auto& G : enumerate_stable_graphs(2, {"a", "b"}, 2)) CHECK(isomorphic(graph_from_json(graph_to_json(G)), G));
  }

  TEST_CASE("bare list and descriptor terms") {
    auto e = read_expression(data + "/g2_mumford.json");
    Ambient A{2, {}};
    CHECK(e.ambient() == A);
    CHECK(e == make_class(A, "kappa2") * Q(60) - make_class(A, "delta_F") - make_class(A, "delta_H(0,{})") * Q(6));
    auto j = json::parse(R"J({"ambient":[2,[]],"terms":[{"coeff":"60","class":"kappa2"},
      {"coeff":"-1","class":"delta_F"},{"coeff":"-6/1","class":"delta_H(0,{})"}]})J");
    CHECK(expression_from_json(j) == e);
  }

  TEST_CASE("edge-side psi keys") {
    auto j = json::parse(R"J({"ambient":[2,[]],"terms":[{"coeff":"1/2","graph":{"v":[1],"e":[[0,0]]},
      "psi":{"e0.0":1}}]})J");
    auto e = expression_from_json(j);
    CHECK(e == make_class(Ambient{2, {}}, "psi|delta_irr") * Q(1, 4));
  }

  TEST_CASE("render") {
    Ambient A{2, {}};
    CHECK(render(TautExpression(A)) == "0\n");
    CHECK(render(make_class(A, "kappa2") * Q(-3, 4)) == "-3/4  kappa2\n");
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS(read_expression(data + "/malformed.json"));
    CHECK_THROWS(read_expression(data + "/does_not_exist.json"));
    CHECK_THROWS(expression_from_json(json::parse(
        R"J({"ambient":[2,["a"]],"terms":[{"coeff":"1","graph":{"v":[2],"legs":{"a":0}},"psi":{"z":1}}]})J")));
    CHECK_THROWS(expression_from_json(json::parse(
        R"J({"ambient":[2,["a","b"]],"terms":[{"coeff":"1","graph":{"v":[2],"legs":{"a":0}}}]})J")));
    CHECK_THROWS(expression_from_json(json::parse(
        R"J({"ambient":[2,[]],"terms":[{"coeff":"1","class":"kappa1"},{"coeff":"1","class":"kappa2"}]})J")));
    CHECK_THROWS(expression_from_json(json::parse(
        R"J({"ambient":[2,[]],"terms":[{"coeff":"1/0","class":"kappa2"}]})J")));
    CHECK_THROWS(graph_from_json(json::parse(R"J({"e":[]})J")));
  }

  TEST_CASE("marking lists") {
    CHECK(split_markings("").empty());
    CHECK(split_markings("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK_THROWS(split_markings("a,a"));
  }
}
