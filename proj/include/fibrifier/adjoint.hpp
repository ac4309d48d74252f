#pragma once

#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "fibrifier/category.hpp"

namespace fibrifier {

/// Smallest-index object t with exactly one morphism x -> t for every x.
std::optional<int> terminal_object(const FinCat& c);
std::optional<int> initial_object(const FinCat& c);

struct Components {
  std::vector<int> class_of;  // object -> component, numbered by smallest member
  CatPtr discrete;            // one object per component
  Functor quotient;           // every morphism goes to an identity
};

Components connected_components(const CatPtr& c);

struct Adjunction {
  Functor left;
  Functor right;
  NatTrans unit;    // id => right ∘ left
  NatTrans counit;  // left ∘ right => id
};

bool triangle_identities_hold(const Adjunction& adj);

/// Decides whether a terminal object (c, e: F c -> y) of F/y may be used as
/// the counit component at y.
using ComponentFilter = std::function<bool(int y, int component)>;

/// Right adjoint of F assembled from terminal objects of the commas F/y.
/// Among isomorphic terminal objects the smallest index accepted by
/// `accept` is used; nullopt when some F/y has no acceptable terminal object.
std::optional<Adjunction> find_right_adjoint(const Functor& F, const ComponentFilter& accept);
std::optional<Adjunction> find_right_adjoint(const Functor& F, bool require_identity_counit);

/// Left adjoint of F from initial objects of the commas y/F. The filter
/// sees the unit component y -> F(L y).
std::optional<Adjunction> find_left_adjoint(const Functor& F, const ComponentFilter& accept);
std::optional<Adjunction> find_left_adjoint(const Functor& F, bool require_identity_unit);

// ---------------------------------------------------------------------------
// Backtracking functor search

struct FunctorSearch {
  /// Require injectivity on objects and morphisms together with equal
  /// hom-set sizes, which makes every solution an isomorphism.
  bool isomorphism = false;
  std::function<bool(int a, int x)> object_allowed;
  std::function<bool(int m, int n)> morphism_allowed;
  std::vector<std::pair<int, int>> forced_objects;
  std::vector<std::pair<int, int>> forced_morphisms;
  /// Shuffles candidate order when set.
  std::mt19937_64* rng = nullptr;
  long max_solutions = 1;
  /// Upper bound on search nodes; negative means unbounded.
  long max_steps = -1;
};

std::vector<Functor> search_functors(const CatPtr& source, const CatPtr& target,
                                     const FunctorSearch& options);

std::optional<Functor> find_isomorphism(const CatPtr& c, const CatPtr& d);
std::optional<Functor> find_isomorphism(const CatPtr& c, const CatPtr& d, FunctorSearch options);

/// Inverse of an isomorphism of categories.
Functor invert(const Functor& iso);

}  // namespace fibrifier
