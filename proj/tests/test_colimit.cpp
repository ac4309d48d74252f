#include "doctest.h"

#include "fibrifier/adjoint.hpp"
#include "fibrifier/catalog.hpp"
#include "fibrifier/colimit.hpp"
#include "fibrifier/comma.hpp"
#include "fibrifier/coset.hpp"
#include "fibrifier/fibration.hpp"

using namespace fibrifier;

namespace {

constexpr int A = 0, Ai = 1, B = 2, Bi = 3;

bool surjective(const Functor& f) {
  std::vector<char> hit(f.target->morphism_count(), 0);
  for (int m : f.mor) hit[m] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
}

// Every functor A -> X which makes the cell components invertible (resp.
// identities) factors uniquely through q.
void check_universal(const Quotient& q, const std::vector<int>& components, bool identities,
                     const CatPtr& x) {
  FunctorSearch all;
  all.max_solutions = 500;
  for (const Functor& F : search_functors(q.q.source, x, all)) {
    bool inverts = true;
    for (int c : components)
      inverts &= identities ? x->is_identity(F.mor[c]) : x->is_iso(F.mor[c]);
    auto H = factor_through(q, F);
    CHECK(H.has_value() == inverts);
  }
}

}  // namespace

TEST_CASE("coset enumeration of small groups") {
  CHECK(enumerate_group({1, {{A, A, A, A, A}}}, 100).order == 5);
  // S3 = <a, b | a^2, b^2, (ab)^3>
  FiniteGroup s3 = enumerate_group({2, {{A, A}, {B, B}, {A, B, A, B, A, B}}}, 100);
  CHECK(s3.order == 6);
  // quaternion group
  CHECK(enumerate_group({2, {{A, A, A, A}, {A, A, Bi, Bi}, {Bi, A, B, A}}}, 100).order == 8);
  // a trivial group with a deceptive presentation
  CHECK(enumerate_group({2, {{Ai, B, A, Bi, Bi}, {Bi, A, B, Ai, Ai}}}, 1000).order == 1);
  CHECK_THROWS_AS(enumerate_group({1, {}}, 50), CapExceeded);

  // group axioms on the enumerated table of S3
  for (int a = 0; a < s3.order; ++a) {
    CHECK(s3.multiply(a, 0) == a);
    CHECK(s3.multiply(0, a) == a);
    CHECK(s3.multiply(a, s3.inverse(a)) == 0);
    for (int b = 0; b < s3.order; ++b)
      for (int c = 0; c < s3.order; ++c)
        CHECK(s3.multiply(s3.multiply(a, b), c) == s3.multiply(a, s3.multiply(b, c)));
  }
}

TEST_CASE("identee and invertee") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  CatPtr one = share(catalog::terminal());

  TwoCellDiagram id = identee(identity_functor(two));
  CHECK(id.apex->object_count() == 2);
  CHECK(is_identity(id.cell));
  CHECK(find_isomorphism(id.apex, two).has_value());

  TwoCellDiagram all = identee(constant_functor(two, one, 0));
  CommaCat arr = comma(identity_functor(two), identity_functor(two));
  CHECK(*all.apex == *arr.cat);
  CHECK(all.cell.component == arr.canonical.component);

  Functor g = catalog::thin_functor(two, iso, {0, 1});
  TwoCellDiagram inv = invertee(g);
  TwoCellDiagram ide = identee(g);
  int u = two->hom(0, 1).front();
  CHECK(std::count(inv.cell.component.begin(), inv.cell.component.end(), u) == 1);
  CHECK(std::count(ide.cell.component.begin(), ide.cell.component.end(), u) == 0);
  CHECK(validate(inv.cell).ok());
  CHECK(is_invertible(whisker(g, inv.cell)));
  CHECK(is_identity(whisker(g, ide.cell)));
}

TEST_CASE("coidentifier of an identity cell is an isomorphism") {
  CatPtr sq = share(catalog::square());
  Quotient q = coidentifier(identee(identity_functor(sq)));
  CHECK(find_isomorphism(q.cat, sq).has_value());
  Functor back = invert(q.q);
  CHECK(validate(back).ok());
  CHECK(compose(back, q.q) == identity_functor(sq));
}

TEST_CASE("coidentifier of the arrow-category cell is the component reflection") {
  CatPtr one = share(catalog::terminal());
  for (const FinCat& c : {catalog::arrow(), catalog::square(), catalog::cyclic_group(3),
                          catalog::preorder(4, {{0, 1}, {2, 3}})}) {
    CatPtr a = share(c);
    Quotient q = coidentifier(identee(constant_functor(a, one, 0)));
    Components k = connected_components(a);
    CHECK(*q.cat == *k.discrete);
    CHECK(q.q == k.quotient);
  }
}

TEST_CASE("coinverter of the arrow-category cell on 2 is I") {
  CatPtr two = share(catalog::arrow());
  CatPtr one = share(catalog::terminal());
  Quotient q = coinverter(identee(constant_functor(two, one, 0)));
  CHECK(find_isomorphism(q.cat, share(catalog::free_iso())).has_value());
  CHECK(validate(q.q).ok());

  GroupoidReflection g = groupoid_reflection(two);
  REQUIRE(g.groupoid);
  CHECK(*g.groupoid->cat == catalog::free_iso());
}

TEST_CASE("coinverter of the invertee of 2 -> I") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  Functor g = catalog::thin_functor(two, iso, {0, 1});
  Quotient q = coinverter(invertee(g));
  CHECK(find_isomorphism(q.cat, iso).has_value());
  Quotient q2 = coinverter(identee(g));
  CHECK(*q2.cat == *two);
}

TEST_CASE("coinverting isomorphisms changes nothing") {
  CatPtr z3 = share(catalog::cyclic_group(3));
  Quotient q = localize(z3, {1, 2}, 100);
  CHECK(find_isomorphism(q.cat, z3).has_value());
  CHECK(q.cat->morphism_count() == 3);
}

TEST_CASE("identifying an arrow of two parallel arrows gives a free monoid") {
  CatPtr k = share(catalog::kronecker());
  CHECK_THROWS_AS(identify_with_identities(k, {1}, 200), CapExceeded);
  // the arrow of 2 collapses to a point
  CatPtr two = share(catalog::arrow());
  Quotient q = identify_with_identities(two, {1}, 200);
  CHECK(*q.cat == catalog::terminal());
}

TEST_CASE("quotient projections are surjective and universal") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  CatPtr sq = share(catalog::square());
  CatPtr z2 = share(catalog::cyclic_group(2));
  CatPtr one = share(catalog::terminal());

  Quotient a = coidentifier(identee(constant_functor(sq, one, 0)));
  CHECK(surjective(a.q));
  check_universal(a, identee(constant_functor(sq, one, 0)).cell.component, true, two);
  check_universal(a, identee(constant_functor(sq, one, 0)).cell.component, true, z2);

  Functor p = catalog::projection(sq, two, two, true);
  TwoCellDiagram d = identee(p);
  Quotient b = coidentifier(d);
  CHECK(surjective(b.q));
  check_universal(b, d.cell.component, true, sq);
  check_universal(b, d.cell.component, true, iso);

  Quotient c = coinverter(d);
  check_universal(c, d.cell.component, false, iso);
  check_universal(c, d.cell.component, false, sq);
}

TEST_CASE("groupoid reflection") {
  CatPtr z4 = share(catalog::cyclic_group(4));
  GroupoidReflection g = groupoid_reflection(z4);
  REQUIRE(g.groupoid);
  CHECK(find_isomorphism(g.groupoid->cat, z4).has_value());

  CatPtr sq = share(catalog::square());
  GroupoidReflection s = groupoid_reflection(sq);
  REQUIRE(s.groupoid);
  CHECK(*s.groupoid->cat == catalog::chaotic(4));
  CHECK(validate(s.groupoid->q).ok());

  CatPtr iso = share(catalog::free_iso());
  GroupoidReflection i = groupoid_reflection(iso);
  REQUIRE(i.groupoid);
  CHECK(*i.groupoid->cat == *iso);

  // two parallel arrows: the vertex group is free on one generator
  CatPtr k = share(catalog::kronecker());
  GroupoidReflection kr = groupoid_reflection(k, 100);
  CHECK_FALSE(kr.groupoid.has_value());
  CHECK(kr.presentation.finite_realization_unknown);

  // the reflection agrees with the generic localization where both finish
  for (const FinCat& c : {catalog::arrow(), catalog::square(), catalog::preorder(3, {{0, 1}, {2, 1}}),
                          catalog::product(catalog::arrow(), catalog::cyclic_group(2))}) {
    CatPtr a = share(c);
    GroupoidReflection r = groupoid_reflection(a);
    REQUIRE(r.groupoid);
    std::vector<int> all(a->morphism_count());
    std::iota(all.begin(), all.end(), 0);
    Quotient l = localize(a, all, 1000);
    auto iso_found = find_isomorphism(r.groupoid->cat, l.cat);
    REQUIRE(iso_found);
    auto h = factor_through(*r.groupoid, l.q);
    REQUIRE(h);
    CHECK(find_isomorphism(r.groupoid->cat, l.cat).has_value());
    check_universal(*r.groupoid, all, false, share(catalog::chaotic(2)));
  }
}

TEST_CASE("a presentation realized by hand") {
  // one object, generator x with x x = x: the two-element monoid {1, x}
  PresentedCategory p;
  p.object_count = 1;
  p.generators = {{0, 0}};
  p.relations = {{0, {0, 0}, {0}}};
  Realization r = realize(p, 10);
  CHECK(r.cat->morphism_count() == 2);
  CHECK(validate(*r.cat).ok());
  CHECK(r.normal_forms[1] == Word{0});
  CHECK(r.cat->compose(1, 1) == 1);
}
