#pragma once

#include <optional>
#include <vector>

#include "fibrifier/category.hpp"

namespace fibrifier {

inline constexpr long kDefaultCap = 10000;

/// A 2-cell d0 => d1 between functors apex -> A.
struct TwoCellDiagram {
  CatPtr apex;
  Functor d0;
  Functor d1;
  NatTrans cell;
};

/// Full subcategory of the arrow category A/A on the f-vertical arrows
/// (resp. arrows with invertible image), with domain, codomain and the
/// tautological 2-cell.
TwoCellDiagram identee(const Functor& f);
TwoCellDiagram invertee(const Functor& f);

/// Words list generator indices in application order: [g1, g2] is g2 ∘ g1.
using Word = std::vector<int>;

struct Relation {
  int source = 0;  // needed for empty words
  Word lhs;
  Word rhs;
};

struct PresentedCategory {
  int object_count = 0;
  std::vector<Arrow> generators;
  std::vector<Relation> relations;
  /// Set when no finite realization was found within the cap.
  bool finite_realization_unknown = false;
};

struct Realization {
  CatPtr cat;
  std::vector<int> generator_image;
  /// Shortlex-least word for every morphism.
  std::vector<Word> normal_forms;
};

/// Enumerates the category presented by generators and relations. Morphisms
/// are ordered by (domain, shortlex normal form). Throws CapExceeded when
/// more than `cap` distinct morphisms are live.
Realization realize(const PresentedCategory& p, long cap);

/// A morphism of A, or the formal inverse of one.
struct Letter {
  int morphism = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A quotient q: A -> Q where every morphism of Q is recorded as a zigzag
/// of morphisms of A.
struct Quotient {
  CatPtr cat;
  Functor q;
  std::vector<std::vector<Letter>> words;
};

/// Universal functor making every cell component an identity.
Quotient coidentifier(const TwoCellDiagram& d, long cap = kDefaultCap);
/// Universal functor making every cell component invertible.
Quotient coinverter(const TwoCellDiagram& d, long cap = kDefaultCap);

/// Quotient of A identifying each listed morphism with an identity.
Quotient identify_with_identities(const CatPtr& a, const std::vector<int>& morphisms, long cap);
/// Localization of A at the listed morphisms.
Quotient localize(const CatPtr& a, const std::vector<int>& morphisms, long cap);

/// The unique H with H ∘ q = F, when F coidentifies (resp. coinverts)
/// what q does. Returns nullopt when F does not factor.
std::optional<Functor> factor_through(const Quotient& q, const Functor& F);

struct GroupoidReflection {
  std::optional<Quotient> groupoid;
  /// Filled in when some vertex group could not be enumerated within the cap.
  PresentedCategory presentation;
};

/// Localization of C at all of its morphisms, computed one connected
/// component at a time from a spanning tree and a presentation of the
/// vertex group. Morphisms are ordered by (domain, codomain, group element).
GroupoidReflection groupoid_reflection(const CatPtr& c, long cap = kDefaultCap);

}  // namespace fibrifier
