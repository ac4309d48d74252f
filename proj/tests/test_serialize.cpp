#include "doctest.h"

#include <fstream>
#include <sstream>

#include "fibrifier/catalog.hpp"
#include "fibrifier/dot.hpp"
#include "fibrifier/errors.hpp"
#include "fibrifier/serialize.hpp"
#include "fixtures.hpp"

using namespace fibrifier;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T, class Reader>
void round_trip(const T& x, Reader read) {
  std::string text = dump(to_json(x));
  T back = read(parse_json(text));
  CHECK(dump(to_json(back)) == text);
}

}  // namespace

TEST_CASE("category documents") {
  FinCat two = catalog::arrow();
  Json j = to_json(two);
  CHECK(dump(j) ==
        "{\"compose\":[[0,0,0],[1,0,1],[2,1,1],[2,2,2]],\"identities\":[0,2],"
        "\"morphisms\":[[0,0],[0,1],[1,1]],\"objects\":2}\n");
  CHECK(cat_from_json(j) == two);
  for (const FinCat& c : {catalog::terminal(), catalog::square(), catalog::cyclic_group(3),
                          catalog::kronecker(), catalog::free_iso()})
    round_trip(c, cat_from_json);
}

TEST_CASE("documents of every schema round-trip") {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  Functor g = catalog::thin_functor(two, iso, {0, 1});
  round_trip(g, functor_from_json);
  CHECK(functor_from_json(to_json(g)) == g);
  round_trip(identity_nat(g), nat_from_json);
  round_trip(identee(g), diagram_from_json);
  round_trip(groupoid_reflection(share(catalog::kronecker()), 50).presentation,
             presentation_from_json);
  for (const Functor& f : fixtures::sample_fibrations()) {
    round_trip(to_pseudofunctor(f).pf, pseudofunctor_from_json);
    round_trip(*extract_cleavage(f), cleavage_from_json);
    round_trip(comprehensive_factorization(f, Side::fib), factorization_from_json);
    round_trip(FibBMorphism{f, f, identity_functor(f.source)}, fibB_from_json);
  }
  round_trip(groupoid_fibre_factorization(constant_functor(two, share(catalog::terminal()), 0),
                                          Side::fib),
             factorization_from_json);
}

TEST_CASE("malformed documents are rejected with a position") {
  try {
    parse_json("{\"objects\": 1,\n \"morphisms\": [[0,0]\n,}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  Json j = to_json(catalog::arrow());
  j["compose"][1] = {1, 0};
  try {
    cat_from_json(j);
    FAIL("expected a schema error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/compose/1") != std::string::npos);
  }
  j = to_json(catalog::arrow());
  j["identities"] = {0, 7};
  CHECK_THROWS_AS(cat_from_json(j), ParseError);
  Json f = to_json(identity_functor(share(catalog::arrow())));
  f["mor"] = {0, 1, 5};
  CHECK_THROWS_AS(functor_from_json(f), ParseError);
  f.erase("obj");
  CHECK_THROWS_AS(functor_from_json(f), ParseError);
}

TEST_CASE("DOT export") {
  CHECK(to_dot(catalog::terminal()) == "digraph C {\n  0;\n}\n");
  CHECK(to_dot(catalog::arrow()) == "digraph C {\n  0;\n  1;\n  0 -> 1 [label=\"m1\"];\n}\n");
  // the diagonal of the square is a composite
  CHECK(generating_morphisms(catalog::square()).size() == 4);
  CHECK(generating_morphisms(catalog::cyclic_group(4)) == std::vector<int>{1});

  CatPtr two = share(catalog::arrow());
  Functor g = catalog::thin_functor(two, share(catalog::free_iso()), {0, 1});
  std::string text = to_dot(comprehensive_factorization(g, Side::fib));
  CHECK(text == to_dot(comprehensive_factorization(g, Side::fib)));
  CHECK(text == read_file(std::string(FIBRIFIER_TEST_DATA) + "/../golden/factorization.dot"));
}
