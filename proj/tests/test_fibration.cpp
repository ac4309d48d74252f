#include "doctest.h"

#include "fibrifier/catalog.hpp"
#include "fibrifier/comma.hpp"
#include "fibrifier/fibration.hpp"

using namespace fibrifier;

namespace {

void check_all(const Functor& f, bool fib, bool opfib) {
  FibReport r = is_fibration(f);
  CHECK(r.agreement());
  CHECK(r.direct == fib);
  CHECK(r.chevalley == fib);
  CHECK(r.algebra == fib);
  FibReport o = is_opfibration(f);
  CHECK(o.agreement());
  CHECK(o.direct == opfib);
  CHECK(o.chevalley == opfib);
  CHECK(o.algebra == opfib);
  CHECK(extract_cleavage(f).has_value() == fib);
}

}  // namespace

TEST_CASE("identities are fibrations and opfibrations") {
  for (const FinCat& c : {catalog::arrow(), catalog::free_iso(), catalog::square(),
                          catalog::cyclic_group(3), catalog::kronecker()}) {
    CatPtr p = share(c);
    Functor id = identity_functor(p);
    check_all(id, true, true);
    for (int m = 0; m < p->morphism_count(); ++m) CHECK(is_cartesian_arrow(id, m) == true);
    CHECK(is_discrete_fibration(id));
    CHECK(is_discrete_opfibration(id));
  }
}

TEST_CASE("point of the free isomorphism") {
  CatPtr iso = share(catalog::free_iso());
  Functor f = point(iso, 0);
  check_all(f, false, false);
  CHECK(is_street_opfibration(f));
  CHECK(is_street_fibration(f));
  int u = iso->hom(1, 0).front();
  CHECK_FALSE(cartesian_lift(f, 0, u).has_value());
  CHECK(cartesian_lift(f, 0, iso->identity(0)) == 0);
  CHECK(is_cartesian_arrow(f, 0));
  CHECK(is_conservative(f));
  CHECK_FALSE(is_isofibration(f));
}

TEST_CASE("non-constant 2 -> I") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  Functor g = catalog::thin_functor(two, iso, {0, 1});
  CHECK_FALSE(is_conservative(g));
  CHECK_FALSE(is_isofibration(g));
  CHECK(has_groupoidal_fibres(g));
}

TEST_CASE("functors to the terminal category") {
  CatPtr one = share(catalog::terminal());
  for (const FinCat& c : {catalog::arrow(), catalog::square(), catalog::kronecker()}) {
    CatPtr p = share(c);
    check_all(constant_functor(p, one, 0), true, true);
  }
}

TEST_CASE("inclusion of the top element of 2") {
  CatPtr one = share(catalog::terminal());
  CatPtr two = share(catalog::arrow());
  Functor top = catalog::thin_functor(one, two, {1});
  check_all(top, false, true);
  CHECK(is_discrete_opfibration(top));
  CHECK_FALSE(is_discrete_fibration(top));
  Functor bottom = catalog::thin_functor(one, two, {0});
  check_all(bottom, true, false);
}

TEST_CASE("product projections") {
  CatPtr two = share(catalog::arrow());
  CatPtr z2 = share(catalog::cyclic_group(2));
  CatPtr p = share(catalog::product(*two, *z2));
  Functor pr = catalog::projection(p, two, z2, true);
  check_all(pr, true, true);
  CHECK(has_groupoidal_fibres(pr));
  CHECK_FALSE(is_discrete_fibration(pr));
  Functor pr2 = catalog::projection(p, two, z2, false);
  check_all(pr2, true, true);
  CHECK_FALSE(has_groupoidal_fibres(pr2));
}

TEST_CASE("domain and codomain of the arrow category") {
  CatPtr sq = share(catalog::square());
  CommaCat arr = comma(identity_functor(sq), identity_functor(sq));
  // the square is a lattice, so it has pullbacks and pushouts
  check_all(arr.left_proj, true, true);
  check_all(arr.right_proj, true, true);
  CatPtr k = share(catalog::kronecker());
  CommaCat ak = comma(identity_functor(k), identity_functor(k));
  // the two parallel arrows have neither a pullback nor a pushout
  check_all(ak.left_proj, true, false);
  check_all(ak.right_proj, false, true);
}

TEST_CASE("cleavages lift identities to identities") {
  CatPtr sq = share(catalog::square());
  CommaCat arr = comma(identity_functor(sq), identity_functor(sq));
  auto c = extract_cleavage(arr.right_proj);
  REQUIRE(c);
  for (int a = 0; a < arr.cat->object_count(); ++a) {
    int b = arr.right_proj.obj[a];
    CHECK(c->at(a, sq->identity(b)) == arr.cat->identity(a));
  }
}

TEST_CASE("vertical iso factorization") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  CatPtr z2 = share(catalog::cyclic_group(2));
  CatPtr e = share(catalog::product(*iso, *z2));
  Functor p = catalog::projection(e, iso, z2, true);
  REQUIRE(is_isofibration(p));
  // F, G: 2 -> I × Z/2 with α having invertible image
  Functor F{two, e, {0, 0}, {0, 0, 0}};
  F.mor = {e->identity(0), e->identity(0), e->identity(0)};
  Functor G = F;
  G.obj = {1, 1};
  G.mor = {e->identity(1), e->identity(1), e->identity(1)};
  // component: (0 -> 1 in I, generator of Z/2)
  int comp = -1;
  for (int m : e->hom(0, 1))
    if (!e->is_identity(m) && p.mor[m] == iso->hom(0, 1).front() && m % 2 == 1) comp = m;
  REQUIRE(comp >= 0);
  NatTrans alpha{F, G, {comp, comp}};
  REQUIRE(validate(alpha).ok());
  VerticalIsoFactorization v = factor_vertical_iso(p, alpha);
  CHECK(validate(v.middle).ok());
  CHECK(validate(v.sigma).ok());
  CHECK(validate(v.tau).ok());
  CHECK(is_invertible(v.sigma));
  CHECK(is_identity(whisker(p, v.tau)));
  CHECK(vertical(v.sigma, v.tau) == alpha);

  NatTrans vert = identity_nat(F);
  VerticalIsoFactorization w = factor_vertical_iso(p, vert);
  CHECK(is_identity(w.sigma));
  CHECK(w.tau == vert);

  // the identity of 2 does not lift the non-invertible arrow
  Functor b0 = point(two, 0);
  Functor b1 = point(two, 1);
  NatTrans a1{b0, b1, {two->hom(0, 1).front()}};
  CHECK_THROWS_AS(factor_vertical_iso(identity_functor(two), a1), Error);
  // non-constant 2 -> I has no invertible lift of the image of 0 -> 1
  Functor g = catalog::thin_functor(two, iso, {0, 1});
  CHECK_THROWS_AS(factor_vertical_iso(g, a1), NotIsofibration);
}
