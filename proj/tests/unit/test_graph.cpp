#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "tautring4/calculus.hpp"
#include "tautring4/descriptor.hpp"

using namespace tautring4;

namespace {

// Contracts edge k by cutting it into two legs and smoothing them again.
StableGraph contract_edge(const StableGraph& G, int k) {
  StableGraph H = G;
  auto e = H.edges[k];
  H.edges.erase(H.edges.begin() + k);
  H.legs["#s"] = HalfEdge{e[0].v, 0};
  H.legs["#t"] = HalfEdge{e[1].v, 0};
  return f_contract(H, "#s", "#t");
}

StableGraph one_vertex(int g, const std::vector<std::string>& legs) {
  StableGraph G;
  G.add_vertex(g);
  for (auto& l : legs) G.legs[l] = HalfEdge{0, 0};
  return G;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("enumeration examples") {
    auto two = enumerate_stable_graphs(2, {}, 1);
    CHECK(two.size() == 2);
    std::set<std::string> names;
    for (auto& G : two) names.insert(family_name(G, 2, {}));
    CHECK(names == std::set<std::string>{"Gamma_irr", "Gamma_{1,{}}"});
    CHECK(enumerate_stable_graphs(0, {"1", "2", "3", "4"}, 1).size() == 3);
    for (auto& G : enumerate_stable_graphs(0, {"1", "2", "3", "4"}, 1)) CHECK(G.num_vertices() == 2);
    CHECK(enumerate_stable_graphs(0, {"1", "2", "3"}, 1).empty());
  }

  TEST_CASE("stability and genus bookkeeping") {
    StableGraph G;
    G.add_vertex(0);
    G.add_vertex(1);
    G.add_edge(0, 0);
    G.add_edge(0, 1);
    CHECK(G.total_genus() == 2);
    CHECK(G.is_stable());
    CHECK(G.codim() == 2);
    StableGraph U = one_vertex(0, {"a", "b"});
    CHECK_FALSE(U.is_stable());
    StableGraph bad = G;
    bad.edges[0][1].v = 5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  TEST_CASE("automorphism counts of named strata") {
    Ambient A{3, {"a"}};
    CHECK(aut_count(divisor_graph(3, A.P, make_divisor(A, false, 1, {"a"}))) == 1);
    CHECK(aut_count(divisor_graph(3, A.P, make_divisor(A, true))) == 2);
    CHECK(aut_count(stratum_E(Ambient{3, {}}, 1, {})) == 4);
    CHECK(aut_count(stratum_E(Ambient{4, {}}, 1, {})) == 2);
    CHECK(aut_count(stratum_E(Ambient{3, {"a"}}, 1, {"a"})) == 2);
    CHECK(aut_count(stratum_F(Ambient{2, {}})) == 8);
    CHECK(aut_count(divisor_graph(2, {}, make_divisor(Ambient{2, {}}, false, 1, {}))) == 2);
  }

  TEST_CASE("canonical form is a complete invariant") {
    std::mt19937 rng(3);
    std::vector<std::string> P{"a", "b"};
    for (int d = 0; d <= 2; ++d) {
      auto graphs = oracle::brute_force_graphs(2, P, d);
      std::map<std::string, std::vector<int>> by_key;  // oracle key -> library code
      for (auto& G : graphs) {
        auto code = canonical_form(G).code;
        auto& slot = by_key[oracle::iso_key(G)];
        if (slot.empty()) slot = code;
        CHECK(slot == code);
        CHECK(canonical_form(oracle::scramble(G, rng)).code == code);
      }
      std::set<std::vector<int>> codes;
      for (auto& [k, code] : by_key) codes.insert(code);
      CHECK(codes.size() == by_key.size());
    }
  }

  TEST_CASE("gluing and contracting two legs") {
    // one vertex of genus g-1 with q, r glued: the irreducible divisor
    StableGraph irr = j_glue(one_vertex(2, {"q", "r", "a"}), "q", "r");
    CHECK(isomorphic(irr, divisor_graph(3, {"a"}, make_divisor(Ambient{3, {"a"}}, true))));
    // two components glued along s, t
    StableGraph two = disjoint_union(one_vertex(1, {"a", "s"}), one_vertex(2, {"t"}));
    StableGraph sep = j_glue(two, "s", "t");
    CHECK(isomorphic(sep, divisor_graph(3, {"a"}, make_divisor(Ambient{3, {"a"}}, false, 1, {"a"}))));
    CHECK(f_contract(two, "s", "t").genus == std::vector<int>{3});
    // a further loop: F
    StableGraph loop = j_glue(one_vertex(0, {"q", "r", "u", "v"}), "u", "v");
    CHECK(isomorphic(j_glue(loop, "q", "r"), stratum_F(Ambient{2, {}})));
    CHECK(f_contract(one_vertex(2, {"s", "t"}), "s", "t").genus == std::vector<int>{3});
    CHECK_THROWS_AS(j_glue(irr, "q", "q"), GraphError);
  }

  TEST_CASE("gluing index sets of the pull-back formula") {
    {
      Ambient A{3, {"a", "b"}};
      Divisor D = make_divisor(A, false, 1, {"a"});
      auto gl = solve_gluings(A.g, A.P, D, divisor_graph(A.g, A.P, D));
      CHECK(gl.f_list.empty());
      REQUIRE(gl.j_list.size() == 1);
      CHECK(gl.j_list[0].codim() == 0);
    }
    {
      Ambient A{3, {}};
      Divisor D = make_divisor(A, true);
      auto gl = solve_gluings(A.g, A.P, D, divisor_graph(3, {}, make_divisor(A, false, 1, {})));
      CHECK(gl.f_list.size() == 2);
      CHECK(gl.j_list.empty());
    }
    {
      Ambient A{3, {"a"}};
      Divisor D = make_divisor(A, true);
      auto gl = solve_gluings(A.g, A.P, D, stratum_F(A));
      REQUIRE(gl.j_list.size() == 1);
      StableGraph want = j_glue(one_vertex(1, {"a", D.s, D.t, "u", "v"}), "u", "v");
      CHECK(isomorphic(gl.j_list[0], want));
    }
  }

  TEST_CASE("every codim-2 stratum inside a divisor is reached by j (g=3, P={a,b})") {
    Ambient A{3, {"a", "b"}};
    int pairs = 0;
    for (auto& Gamma : enumerate_stable_graphs(A.g, A.P, 2))
      for (int k = 0; k < 2; ++k) {
        StableGraph Adiv = contract_edge(Gamma, k);
        Divisor D = divisor_from_graph(A, Adiv);
        auto gl = solve_gluings(A.g, A.P, D, Gamma);
        ++pairs;
        CHECK_FALSE(gl.j_list.empty());
        for (auto& G : gl.j_list) CHECK(isomorphic(j_glue(G, D.s, D.t), Gamma));
        for (auto& G : gl.f_list) CHECK(isomorphic(f_contract(G, D.s, D.t), Gamma));
      }
    CHECK(pairs > 0);
  }
}
