#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "fibrifier/adjoint.hpp"
#include "fibrifier/category.hpp"
#include "fibrifier/colimit.hpp"
#include "fibrifier/comma.hpp"
#include "fibrifier/factor.hpp"
#include "fibrifier/fibration.hpp"
#include "fibrifier/grothendieck.hpp"

namespace fibrifier {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);

/// Canonical text: sorted keys, no insignificant whitespace, trailing newline.
std::string dump(const Json& j);

Json to_json(const FinCat& c);
Json to_json(const Functor& f);
Json to_json(const NatTrans& t);
Json to_json(const TwoCellDiagram& d);
Json to_json(const PresentedCategory& p);
Json to_json(const Quotient& q);
Json to_json(const PseudoFunctor& p);
Json to_json(const Cleavage& c);
Json to_json(const Adjunction& a);
Json to_json(const FibReport& r);
Json to_json(const CommaCat& c);
Json to_json(const FreeAlgebra& t);
Json to_json(const GrothendieckResult& g);
Json to_json(const FactorizationResult& r);
Json to_json(const FibBMorphism& m);
Json to_json(const ValidationReport& r);

// Readers throw ParseError naming the offending JSON pointer. They check
// shapes and index ranges; the category laws are left to validate().
FinCat cat_from_json(const Json& j);
Functor functor_from_json(const Json& j);
NatTrans nat_from_json(const Json& j);
TwoCellDiagram diagram_from_json(const Json& j);
PresentedCategory presentation_from_json(const Json& j);
PseudoFunctor pseudofunctor_from_json(const Json& j);
Cleavage cleavage_from_json(const Json& j);
FactorizationResult factorization_from_json(const Json& j);
FibBMorphism fibB_from_json(const Json& j);

}  // namespace fibrifier
