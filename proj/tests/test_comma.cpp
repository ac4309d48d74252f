#include "doctest.h"

#include "fibrifier/adjoint.hpp"
#include "fibrifier/catalog.hpp"
#include "fibrifier/comma.hpp"

using namespace fibrifier;

namespace {

// Independent count of the objects of f/g.
long comma_object_count(const Functor& f, const Functor& g) {
  long n = 0;
  for (int a = 0; a < f.source->object_count(); ++a)
    for (int c = 0; c < g.source->object_count(); ++c)
      n += static_cast<long>(f.target->hom(f.obj[a], g.obj[c]).size());
  return n;
}

// Independent count of commuting squares.
long comma_morphism_count(const Functor& f, const Functor& g) {
  const FinCat& A = *f.source;
  const FinCat& C = *g.source;
  const FinCat& B = *f.target;
  long n = 0;
  for (int alpha = 0; alpha < A.morphism_count(); ++alpha)
    for (int gamma = 0; gamma < C.morphism_count(); ++gamma)
      for (int b1 : B.hom(f.obj[A.dom(alpha)], g.obj[C.dom(gamma)]))
        for (int b2 : B.hom(f.obj[A.cod(alpha)], g.obj[C.cod(gamma)]))
          if (B.compose(g.mor[gamma], b1) == B.compose(b2, f.mor[alpha])) ++n;
  return n;
}

}  // namespace

TEST_CASE("arrow category of 2 is the three-element chain") {
  CatPtr two = share(catalog::arrow());
  CommaCat c = comma(identity_functor(two), identity_functor(two));
  CHECK(c.cat->object_count() == 3);
  CHECK(c.cat->morphism_count() == 6);
  CHECK(find_isomorphism(c.cat, share(catalog::preorder(3, {{0, 1}, {1, 2}}))).has_value());
  CHECK(validate(*c.cat).ok());
  CHECK(validate(c.canonical).ok());
}

TEST_CASE("comma sizes agree with direct counts") {
  CatPtr two = share(catalog::arrow());
  CatPtr sq = share(catalog::square());
  CatPtr iso = share(catalog::free_iso());
  CatPtr z4 = share(catalog::cyclic_group(4));
  std::vector<std::pair<Functor, Functor>> cases{
      {catalog::projection(sq, two, two, true), catalog::projection(sq, two, two, false)},
      {catalog::thin_functor(two, iso, {0, 1}), identity_functor(iso)},
      {point(iso, 0), catalog::thin_functor(two, iso, {1, 0})},
      {identity_functor(z4), identity_functor(z4)},
      {point(z4, 0), point(z4, 0)},
  };
  for (auto& [f, g] : cases) {
    CommaCat c = comma(f, g);
    CHECK(c.cat->object_count() == comma_object_count(f, g));
    CHECK(c.cat->morphism_count() == comma_morphism_count(f, g));
    CHECK(validate(*c.cat).ok());
    CHECK(validate(c.left_proj).ok());
    CHECK(validate(c.right_proj).ok());
    CHECK(validate(c.canonical).ok());
  }
  CHECK_THROWS_AS(comma(identity_functor(two), identity_functor(iso)), TargetMismatch);
}

TEST_CASE("comma with an empty side is empty") {
  CatPtr empty = share(catalog::discrete(0));
  CatPtr two = share(catalog::arrow());
  Functor e{empty, two, {}, {}};
  CommaCat c = comma(e, identity_functor(two));
  CHECK(c.cat->object_count() == 0);
}

TEST_CASE("iso-comma keeps invertible triples") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  Functor f = catalog::thin_functor(two, iso, {0, 1});
  CommaCat c = iso_comma(f);
  // every arrow of I is invertible, so nothing is dropped
  CHECK(c.cat->object_count() == 4);
  CommaCat d = iso_comma(identity_functor(two));
  CHECK(d.cat->object_count() == 2);
  Functor u = iso_comma_unit(identity_functor(two), d);
  CHECK(validate(u).ok());
}

TEST_CASE("monad laws for R, L and I") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  CatPtr sq = share(catalog::square());
  CatPtr z2 = share(catalog::cyclic_group(2));
  std::vector<Functor> fs{point(iso, 0), catalog::thin_functor(two, iso, {0, 1}),
                          catalog::projection(sq, two, two, true), identity_functor(two),
                          constant_functor(two, z2, 0)};
  for (const Functor& f : fs)
    for (MonadKind k : {MonadKind::R, MonadKind::L, MonadKind::I}) {
      FreeAlgebra t = monad_object(k, f);
      CHECK(validate(t.carrier_map).ok());
      Functor u = monad_unit(k, f, t);
      CHECK(validate(u).ok());
      CHECK(compose(t.carrier_map, u) == f);
      MonadLawReport r = check_monad_laws(k, f);
      CHECK(r.left_unit);
      CHECK(r.right_unit);
      CHECK(r.associativity);
    }
}

TEST_CASE("free-iso point: adjoints of f: 1 -> I") {
  CatPtr iso = share(catalog::free_iso());
  Functor f = point(iso, 0);
  auto right = find_right_adjoint(f, false);
  REQUIRE(right);
  CHECK(is_identity(right->unit));
  CHECK_FALSE(is_identity(right->counit));
  CHECK(is_invertible(right->counit));
  CHECK_FALSE(find_right_adjoint(f, true).has_value());

  auto left = find_left_adjoint(f, false);
  REQUIRE(left);
  CHECK(is_identity(left->counit));
  CHECK_FALSE(is_identity(left->unit));
  CHECK(is_invertible(left->unit));
  CHECK_FALSE(find_left_adjoint(f, true).has_value());
}

TEST_CASE("adjoints in preorders are Galois connections") {
  // inclusion of {0} into 2 has right adjoint? no: needs terminal in f/1; (0 -> 1) is terminal.
  CatPtr one = share(catalog::terminal());
  CatPtr two = share(catalog::arrow());
  Functor bottom = catalog::thin_functor(one, two, {0});
  Functor top = catalog::thin_functor(one, two, {1});
  CHECK(find_right_adjoint(bottom, false).has_value());
  CHECK_FALSE(find_left_adjoint(bottom, false).has_value());
  CHECK(find_left_adjoint(top, false).has_value());
  CHECK_FALSE(find_right_adjoint(top, false).has_value());
  auto adj = find_right_adjoint(identity_functor(two), true);
  REQUIRE(adj);
  CHECK(triangle_identities_hold(*adj));
}
