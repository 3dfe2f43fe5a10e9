#include "doctest.h"
#include "tautring4/calculus.hpp"
#include "tautring4/catalog.hpp"
#include "tautring4/descriptor.hpp"

#include <functional>

using namespace tautring4;

namespace {

// Product of two tensor classes, factor by factor.
TensorExpr tensor_product(const TensorExpr& a, const TensorExpr& b) {
  TensorExpr out;
  out.factors = a.factors;
  for (auto& [k1, c1] : a.terms)
    for (auto& [k2, c2] : b.terms) {
      std::vector<std::vector<std::pair<TautMonomial, Q>>> per;
      for (size_t f = 0; f < k1.size(); ++f) {
        TautExpression x(a.factors[f]), y(a.factors[f]);
        x.add(k1[f], 1);
        y.add(k2[f], 1);
        TautExpression xy = multiply(x, y);
        per.emplace_back(xy.terms().begin(), xy.terms().end());
      }
      std::vector<TautMonomial> key(k1.size());
      std::function<void(size_t, Q)> rec = [&](size_t f, Q c) {
        if (f == per.size()) return out.add(key, c);
        for (auto& [m, x] : per[f]) {
          key[f] = m;
          rec(f + 1, c * x);
        }
      };
      rec(0, c1 * c2);
    }
  return out;
}

TensorExpr difference(TensorExpr a, const TensorExpr& b) {
  for (auto& [k, c] : b.terms) a.add(k, -c);
  return a;
}

Q entry(const QVec& v, int i) {
  auto it = v.find(i);
  return it == v.end() ? Q(0) : it->second;
}

int index_of(const Catalog& c, const std::string& name) {
  for (size_t i = 0; i < c.basis().classes.size(); ++i)
    if (c.basis().classes[i].name == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_SUITE("calculus") {
  TEST_CASE("delta_irr squared on (3,{})") {
    Ambient A{3, {}};
    auto d = make_class(A, "delta_irr");
    auto want = make_class(A, "psi|delta_irr") * Q(-1) + make_class(A, "delta_F") * Q(2) +
                make_class(A, "delta_E(1,{})") * Q(2);
    CHECK(product_deg2(d, d) == want);
  }

  TEST_CASE("kappa_1 times a separating divisor") {
    Ambient A{3, {"a"}};
    CHECK(product_deg2(make_class(A, "kappa1"), make_class(A, "delta_{1,{a}}")) ==
          make_class(A, "kappa|delta_{1,{a}}") + make_class(A, "delta_{1,{a}}|kappa"));
    Ambient B{4, {}};
    CHECK(product_deg2(make_class(B, "kappa1"), make_class(B, "delta_{1,{}}")) ==
          make_class(B, "kappa|delta_{1,{}}") + make_class(B, "delta_{1,{}}|kappa"));
    // kappa_1 vanishes on the M0,3 side
    Ambient C{2, {"a", "b"}};
    CHECK(product_deg2(make_class(C, "kappa1"), make_class(C, "delta_{0,{a,b}}")) ==
          make_class(C, "delta_{0,{a,b}}|kappa"));
  }

  TEST_CASE("delta_irr squared vanishes on (1,{x}) modulo relations") {
    Ambient A{1, {"x"}};
    auto d = make_class(A, "delta_irr");
    auto r = reduce(product_deg2(d, d));
    CHECK_FALSE(r.candidate());
    for (auto& c : r.coords) CHECK(c == 0);
  }

  TEST_CASE("forgetful pull-back examples") {
    CHECK(forgetful_pullback(make_class(Ambient{1, {"a"}}, "delta_irr"), {"x"}) ==
          make_class(Ambient{1, {"a", "x"}}, "delta_irr"));
    CHECK(forgetful_pullback(make_class(Ambient{2, {}}, "delta_irr"), {"x"}) ==
          make_class(Ambient{2, {"x"}}, "delta_irr"));
    Ambient B{2, {"x"}};
    CHECK(forgetful_pullback(make_class(Ambient{2, {}}, "kappa2"), {"x"}) ==
          make_class(B, "kappa2") - make_class(B, "psi_x^2"));
    Ambient C{3, {"a", "x"}};
    CHECK(forgetful_pullback(make_class(Ambient{3, {"a"}}, "delta_{1,{a}}"), {"x"}) ==
          make_class(C, "delta_{1,{a}}") + make_class(C, "delta_{1,{a,x}}"));
    CHECK_THROWS(forgetful_pullback(make_class(Ambient{3, {"a"}}, "kappa1"), {"a"}));
  }

  TEST_CASE("projection formula and excess expansion") {
    for (auto A : {Ambient{2, {}}, Ambient{3, {}}, Ambient{3, {"x"}}, Ambient{4, {}}}) {
      CAPTURE(A.text());
      Divisor I = make_divisor(A, true);
      auto d = make_class(A, "delta_irr");
      CHECK(pushforward(A, boundary_pullback(d, I), I) == product_deg2(d, d) * Q(2));
      for (auto& G : enumerate_stable_graphs(A.g, A.P, 1)) {
        if (G.num_vertices() != 2) continue;
        Divisor D = divisor_from_graph(A, G);
        TautExpression e(A);
        e.add(G, 1);
        auto via = pushforward(A, boundary_pullback(e, D), D) * Q(1, aut_count(G));
        CHECK(via == product_deg2(e, e));
      }
    }
  }

  TEST_CASE("pull-back respects products (g <= 4, |P| <= 2)") {
    int checked = 0;
    for (int g = 1; g <= 4; ++g)
      for (auto P : {std::vector<std::string>{}, std::vector<std::string>{"a"}, std::vector<std::string>{"a", "b"}}) {
        Ambient A{g, P};
        if (!A.stable()) continue;
        auto gens = generators(A, 1);
        for (auto& G : enumerate_stable_graphs(g, P, 1)) {
          Divisor D = divisor_from_graph(A, G);
          for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = i; j < gens.size(); ++j) {
              TautExpression x(A), y(A);
              x.add(gens[i], 1);
              y.add(gens[j], 1);
              TensorExpr lhs = boundary_pullback(product_deg2(x, y), D);
              TensorExpr rhs = tensor_product(boundary_pullback(x, D), boundary_pullback(y, D));
              auto tc = tensor_coordinates(difference(lhs, rhs));
              ++checked;
              CAPTURE(A.text());
              CAPTURE(family_name(G, g, P));
              CHECK(tc.is_zero());
            }
        }
      }
    CHECK(checked > 1000);
  }

  TEST_CASE("H2 x H2 projections") {
    Ambient A{6, {"x"}};
    Divisor D = make_divisor(A, false, 3, {"x"});
    auto F = factor_ambients(A, D);
    const Catalog& c0 = catalog(F[0], 1);
    const Catalog& c1 = catalog(F[1], 1);
    const std::string& s0 = F[0].has(D.s) ? D.s : D.t;
    const std::string& s1 = F[1].has(D.s) ? D.s : D.t;
    int i = index_of(c0, "psi_" + s0), j = index_of(c1, "psi_" + s1);
    REQUIRE(i >= 0);
    REQUIRE(j >= 0);
    int n1 = static_cast<int>(c1.basis().classes.size());
    for (auto name : {"psi|delta_{3,{x}}", "delta_{3,{x}}|psi"})
      CHECK(entry(restriction_H2xH2(make_class(A, name), D), i * n1 + j) == -1);
    CHECK(restriction_H2xH2(make_class(A, "kappa2"), D).empty());
    CHECK(restriction_H2xH2(make_class(A, "psi_x^2"), D).empty());
    CHECK(restriction_H2xH2(make_class(A, "delta_E(2,{x})"), D).empty());
  }
}
