#pragma once

// Small named categories and functors used as building blocks and fixtures.

#include <utility>
#include <vector>

#include "fibrifier/category.hpp"

namespace fibrifier::catalog {

/// Preorder on n objects generated by the given pairs (a <= b). Morphisms
/// are the pairs (a, b) with a <= b in lexicographic order.
FinCat preorder(int n, const std::vector<std::pair<int, int>>& generators);

FinCat terminal();            // **1**
FinCat discrete(int n);
FinCat arrow();               // **2** = {0 -> 1}; morphisms id0, 0->1, id1
FinCat free_iso();            // I: two objects, one isomorphism between them
FinCat chaotic(int n);        // one morphism between every ordered pair
FinCat square();              // **2** × **2**
FinCat cyclic_group(int n);   // one object; morphism k is g^k
FinCat kronecker();           // two objects, two parallel non-identity arrows

FinCat idempotent();          // one object, morphisms 1 and e with e e = e

/// Free category on a quiver without directed cycles; morphisms are the
/// paths, identities first. Throws Error on a cycle.
FinCat free_category(int n, const std::vector<std::pair<int, int>>& edges);

FinCat product(const FinCat& a, const FinCat& b);
/// Disjoint union; the objects and morphisms of b follow those of a.
FinCat coproduct(const FinCat& a, const FinCat& b);

/// Functor between preorder-like categories (at most one morphism between
/// any two objects) determined by its object map. Throws Error when the
/// object map is not monotone.
Functor thin_functor(const CatPtr& source, const CatPtr& target, const std::vector<int>& obj);

/// Projection a × b -> a (first = true) or a × b -> b.
Functor projection(const CatPtr& product_cat, const CatPtr& a, const CatPtr& b, bool first);

}  // namespace fibrifier::catalog
