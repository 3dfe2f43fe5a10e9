#include "doctest.h"
#include "tautring4/calculus.hpp"
#include "tautring4/catalog.hpp"
#include "tautring4/descriptor.hpp"

using namespace tautring4;

namespace {

const Relation* find_native(const Ambient& A, const std::string& id) {
  static std::vector<Relation> keep;
  keep = native_relations(A);
  for (auto& r : keep)
    if (r.id == id) return &r;
  return nullptr;
}

Q coeff_of(const Rederivation& R, const std::string& name) {
  for (size_t i = 0; i < R.basis.classes.size(); ++i)
    if (R.basis.classes[i].name == name) return R.coeffs[i];
  FAIL("no basis class " << name);
  return 0;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("Mumford relation on (2,{})") {
    Ambient A{2, {}};
    auto m = make_class(A, "kappa2") * Q(60) - make_class(A, "delta_F") - make_class(A, "delta_H(0,{})") * Q(6);
    const Relation* r = find_native(A, "g2-mumford");
    REQUIRE(r);
    CHECK(r->expr == m);
    CHECK(catalog(A, 2).contains(m));
    auto red = reduce(m);
    CHECK_FALSE(red.candidate());
    for (auto& c : red.coords) CHECK(c == 0);
    // without natives the same class is a relation candidate
    CHECK(Catalog(A, 2, false).reduce(m).candidate());
  }

  TEST_CASE("Faber relation on (2,{x}) after renaming") {
    Ambient A{2, {"x"}};
    const Relation* r = find_native(A, "g2n1-faber");
    REQUIRE(r);
    auto want = make_class(A, "psi_x^2") - make_class(A, "delta_F") * Q(1, 120) -
                make_class(A, "delta_H(0,{x})") * Q(13, 120) + make_class(A, "delta_H(0,{})") * Q(1, 120) -
                make_class(A, "delta_E(0,{x})") * Q(1, 5) - make_class(A, "delta_G(1,{},0,{x})") * Q(7, 5);
    CHECK(r->expr == want);
  }

  TEST_CASE("kappa_2 on M0,4 and its pull-back") {
    Ambient A{0, {"a", "b", "c", "d"}};
    auto k = make_class(A, "kappa2");
    CHECK(catalog(A, 2).contains(k));
    auto up = forgetful_pullback(k, {"e"});
    auto red = reduce(up);
    CHECK_FALSE(red.candidate());
    for (auto& c : red.coords) CHECK(c == 0);
  }

  TEST_CASE("reduce returns a representative of the same class") {
    for (auto A : {Ambient{2, {"a"}}, Ambient{3, {}}, Ambient{1, {"a", "b", "c"}}, Ambient{2, {"a", "b"}}}) {
      const Catalog& c = catalog(A, 2);
      for (auto& m : generators(A, 2)) {
        TautExpression e(A);
        e.add(m, 1);
        auto r = c.reduce(e);
        CAPTURE(A.text());
        CHECK_FALSE(r.candidate());
        TautExpression back(A);
        for (size_t j = 0; j < r.coords.size(); ++j)
          back.add(c.basis().classes[j].m, r.coords[j] * c.basis().classes[j].scale);
        CHECK(c.contains(back - e));
      }
    }
  }

  TEST_CASE("degree-1 relations only below genus 3") {
    CHECK(degree1_relations(Ambient{3, {"a"}}).empty());
    CHECK_FALSE(degree1_relations(Ambient{2, {}}).empty());
    CHECK_FALSE(degree1_relations(Ambient{0, {"a", "b", "c", "d", "e"}}).empty());
  }

  TEST_CASE("empty catalog file leaves structural relations only") {
    std::string path = std::string(TAUTRING4_TEST_DATA) + "/empty_catalog.json";
    CHECK(load_natives(path).empty());
    Ambient A{2, {}};
    Catalog c(A, 2, true, path);
    CHECK(c.reduce(make_class(A, "kappa2")).candidate());
  }

  TEST_CASE("rederived relation on (3,{a,b})") {
    Rederivation R = rederive_m32();
    CHECK(R.kernel_dim == 1);
    CHECK(coeff_of(R, "kappa|delta_{3,{}}") == -1);
    CHECK(coeff_of(R, "delta_F") == Q(-1, 630));
    CHECK(coeff_of(R, "psi|delta_{3,{}}") == 5);
    CHECK(coeff_of(R, "delta_G(0,{a,b},1,{})") == -1);
    CHECK(catalog(Ambient{3, {"a", "b"}}, 2).contains(R.relation));
  }
}
