#include <random>

#include "doctest.h"

#include <sstream>
#include "tautring4/catalog.hpp"
#include "tautring4/reports.hpp"

using namespace tautring4;

namespace {

RationalMatrix random_matrix(int r, int c, std::mt19937& rng, int density_pct = 40) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), pct(0, 99);
  RationalMatrix M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (pct(rng) < density_pct) {
        Q x(num(rng), den(rng));
        x.canonicalize();
        M.set(i, j, x);
      }
  return M;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("fractions print as p/q and parse back") {
    CHECK(to_fraction(Q(3)) == "3/1");
    CHECK(to_fraction(parse_fraction("-6/4")) == "-3/2");
    CHECK(parse_fraction("-40/21") == Q(-40, 21));
    CHECK(parse_fraction("7") == Q(7));
    CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fraction("x"), std::invalid_argument);
  }

  TEST_CASE("rank of the identity") {
    for (int n : {1, 5, 17}) {
      RationalMatrix I(n, n);
      for (int i = 0; i < n; ++i) I.set(i, i, 1);
      CHECK(I.rank() == n);
    }
  }

  TEST_CASE("rank agrees with the transpose") {
    std::mt19937 rng(7);
    for (int t = 0; t < 60; ++t) {
      int r = 1 + static_cast<int>(rng() % 9), c = 1 + static_cast<int>(rng() % 9);
      auto M = random_matrix(r, c, rng);
      CHECK(M.rank() == M.transpose().rank());
    }
  }

  TEST_CASE("kernel and solve back-substitute exactly") {
    std::mt19937 rng(11);
    for (int t = 0; t < 40; ++t) {
      int r = 1 + static_cast<int>(rng() % 7), c = 1 + static_cast<int>(rng() % 9);
      auto M = random_matrix(r, c, rng, 50);
      auto K = M.kernel();
      CHECK(static_cast<int>(K.size()) == c - M.rank());
      for (auto& k : K) CHECK(M.apply(k).empty());
      // b in the image: b = M x0
      QVec x0;
      for (int j = 0; j < c; ++j) x0[j] = Q(static_cast<int>(rng() % 7) - 3);
      for (auto it = x0.begin(); it != x0.end();) it = it->second == 0 ? x0.erase(it) : std::next(it);
      QVec b = M.apply(x0);
      auto x = M.solve(b);
      REQUIRE(x.has_value());
      CHECK(M.apply(*x) == b);
    }
  }

  TEST_CASE("solve reports an inconsistent system") {
    RationalMatrix M(2, 1);
    M.set(0, 0, 1);
    M.set(1, 0, 1);
    CHECK_FALSE(M.solve(QVec{{0, Q(1)}, {1, Q(2)}}).has_value());
  }

  TEST_CASE("fraction-free elimination keeps integer rows") {
    std::vector<QVec> rows = {{{0, Q(2)}, {1, Q(4)}, {2, Q(6)}}, {{0, Q(3)}, {1, Q(5)}}, {{1, Q(1)}, {2, Q(8)}}};
    auto R = rref(rows);
    CHECK(R.size() == 3);
    for (auto& [pivot, row] : R) {
      CHECK(!row.empty());
      CHECK(row.front().first == pivot);
      CHECK(row.front().second > 0);
    }
    // rational input gives primitive integer rows as well
    auto z = to_primitive({{0, Q(1, 2)}, {3, Q(-1, 3)}});
    REQUIRE(z.size() == 2);
    CHECK(z[0].second == 3);
    CHECK(z[1].second == -2);
  }

  TEST_CASE("echelon membership") {
    Echelon E;
    CHECK(E.insert({{0, Q(1)}, {1, Q(1)}}));
    CHECK(E.insert({{1, Q(1)}, {2, Q(1)}}));
    CHECK_FALSE(E.insert({{0, Q(2)}, {1, Q(3)}, {2, Q(1)}}));
    CHECK(E.in_span({{0, Q(1)}, {2, Q(-1)}}));
    CHECK_FALSE(E.in_span({{2, Q(1)}}));
    CHECK(E.rank() == 2);
  }

  TEST_CASE("dump writes (row, col, \"p/q\") triplets") {
    RationalMatrix M(2, 3);
    M.set(0, 2, Q(-1, 2));
    M.set(1, 0, Q(5));
    std::ostringstream os;
    M.dump(os);
    CHECK(os.str() == "(0, 2, \"-1/2\")\n(1, 0, \"5/1\")\n");
  }

  TEST_CASE("Keel relations leave five divisor classes on M_{0,5}") {
    Ambient A{0, {"1", "2", "3", "4", "5"}};
    CHECK(enumerate_stable_graphs(0, A.P, 1).size() == 10);
    auto gens = generators(A, 1);
    CHECK(gens.size() == 16);  // kappa_1, five psi, ten boundary divisors
    const Catalog& c = catalog(A, 1);
    CHECK(static_cast<int>(gens.size()) - c.rank() == 5);
    CHECK(degree1_basis(A).classes.size() == 5);
  }
}
