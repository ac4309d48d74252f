#include "doctest.h"

#include "fibrifier/catalog.hpp"
#include "fibrifier/corpus.hpp"
#include "fibrifier/errors.hpp"
#include "fibrifier/serialize.hpp"

using namespace fibrifier;

namespace {

GenConfig config(int count, std::uint64_t seed = 7) {
  GenConfig c;
  c.seed = seed;
  c.instance_count = count;
  return c;
}

bool valid_cleavage(const Cleavage& c) {
  const Functor& f = c.functor;
  std::vector<char> cart = cartesian_mask(f);
  for (int a = 0; a < f.source->object_count(); ++a)
    for (int beta = 0; beta < f.target->morphism_count(); ++beta) {
      int phi = c.lift[a][beta];
      if (f.target->cod(beta) != f.obj[a]) {
        if (phi != -1) return false;
        continue;
      }
      if (phi < 0 || !cart[phi] || f.source->cod(phi) != a || f.mor[phi] != beta) return false;
      if (f.target->is_identity(beta) && !f.source->is_identity(phi)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("generators are deterministic") {
  for (int i = 0; i < 20; ++i) {
    GenConfig c = instance_config(config(0), i);
    CHECK(gen_category(c) == gen_category(c));
    CHECK(gen_functor(c) == gen_functor(c));
    CHECK(gen_fibration(c).functor == gen_fibration(c).functor);
  }
  for (const std::string& suite : {"chevalley-agreement", "fibB-factorization"}) {
    std::string a = dump(run_suite(config(15), suite).to_json());
    CHECK(a == dump(run_suite(config(15), suite).to_json()));
    CHECK(a != dump(run_suite(config(15, 8), suite).to_json()));
  }
}

TEST_CASE("generators respect their bounds and produce what they claim") {
  GenConfig base = config(0, 3);
  base.max_objects = 6;
  base.max_morphisms = 30;
  for (int i = 0; i < 60; ++i) {
    GenConfig c = instance_config(base, i);
    FinCat cat = gen_category(c);
    CHECK(validate(cat).ok());
    CHECK(cat.object_count() <= 6);
    CHECK(cat.morphism_count() <= 30);

    GeneratedFibration g = gen_fibration(c);
    CAPTURE(g.recipe);
    CHECK(g.functor.source->object_count() <= 6);
    FibReport r = is_fibration(g.functor);
    CHECK(r.direct);
    CHECK(r.chevalley);
    CHECK(r.algebra);
    CHECK(valid_cleavage(g.cleavage));

    CHECK(is_isofibration(gen_isofibration(c)));
    CHECK(fibB_violations(gen_fibB_morphism(c)).empty());
  }
}

TEST_CASE("bad configurations are rejected") {
  GenConfig c;
  c.max_objects = 0;
  CHECK_THROWS_AS(gen_category(c), Error);
  CHECK_THROWS_AS(run_suite(config(1), "no-such-suite"), Error);
}

TEST_CASE("an empty run reports nothing and passes") {
  for (const std::string& suite : suite_names()) {
    SuiteReport r = run_suite(config(0), suite);
    CHECK(r.instances.empty());
    CHECK(r.passed());
    CHECK(r.to_json()["instances"].empty());
  }
}

TEST_CASE("the 1 -> I suite") {
  SuiteReport r = run_suite(config(5), "point-into-iso");
  REQUIRE(r.instances.size() == 1);
  CHECK(r.passed());
  CHECK(r.instances[0].checks.size() >= 7);
}

TEST_CASE("small suite runs pass") {
  for (const std::string& suite : {"chevalley-agreement", "comprehensive", "groupoid-fibres", "isofibration",
                                   "structural-lemmas", "fibB-factorization"}) {
    CAPTURE(suite);
    SuiteReport r = run_suite(config(25), suite);
    CHECK(r.instances.size() == 25);
    CHECK(r.failures() == 0);
  }
}

TEST_CASE("failing instances carry a witness") {
  SuiteReport r = run_suite(config(1), "engine-honesty");
  REQUIRE(r.instances.size() == 1);
  CHECK_FALSE(r.passed());
  CHECK(r.instances[0].witness.contains("apex"));
}

TEST_CASE("shrinking keeps the failure and reduces the instance") {
  // fails when the image contains a non-identity endomorphism
  auto fails = [](const Functor& f) {
    for (int m = 0; m < f.source->morphism_count(); ++m)
      if (f.target->dom(f.mor[m]) == f.target->cod(f.mor[m]) && !f.target->is_identity(f.mor[m])) return true;
    return false;
  };
  CatPtr big = share(catalog::product(catalog::preorder(3, {{0, 1}, {1, 2}}), catalog::cyclic_group(2)));
  CatPtr target = share(catalog::coproduct(catalog::cyclic_group(2), catalog::discrete(2)));
  Functor f{big, target, std::vector<int>(big->object_count(), 0), {}};
  for (int m = 0; m < big->morphism_count(); ++m) f.mor.push_back(m % 2);
  REQUIRE(validate(f).ok());
  REQUIRE(fails(f));
  Functor s = shrink(f, fails);
  CHECK(fails(s));
  CHECK(validate(s).ok());
  CHECK(s.source->object_count() == 1);
  CHECK(s.source->morphism_count() == 2);
  CHECK(s.target->object_count() == 1);
  // a property that never fails leaves the input alone
  CHECK(shrink(f, [](const Functor&) { return false; }) == f);
}
