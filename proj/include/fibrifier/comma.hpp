#pragma once

#include <array>
#include <vector>

#include "fibrifier/category.hpp"

namespace fibrifier {

/// Comma category f/g for f: A -> B and g: C -> B.
///
/// Objects are triples (a, c, β: f a -> g c) in lexicographic order of
/// (a, c, β). Morphisms (a, c, β) -> (a', c', β') are pairs (α, γ) with
/// g γ ∘ β = β' ∘ f α, ordered by (domain, codomain, α, γ).
struct CommaCat {
  CatPtr cat;
  Functor left_proj;   // d0: (a, c, β) ↦ a
  Functor right_proj;  // d1: (a, c, β) ↦ c
  NatTrans canonical;  // f d0 => g d1, component β
  std::vector<std::array<int, 3>> objects;        // (a, c, β)
  std::vector<std::array<int, 2>> morphisms;      // (α, γ)

  /// Index of the object (a, c, β), or -1.
  int find_object(int a, int c, int beta) const;
  /// Index of the morphism (α, γ) between two objects, or -1.
  int find_morphism(int dom, int cod, int alpha, int gamma) const;
};

/// Throws TargetMismatch when f and g have different targets.
CommaCat comma(const Functor& f, const Functor& g);

/// Iso-comma f/≅B: the full subcategory of f/id_B on invertible β.
CommaCat iso_comma(const Functor& f);

/// Inclusion A -> f/≅B, a ↦ (a, f a, id).
Functor iso_comma_unit(const Functor& f, const CommaCat& iso);

// ---------------------------------------------------------------------------
// Monads on Cat/B

enum class MonadKind { R, L, I };

/// Free algebra T(A, f): the comma category together with its structure map
/// to B, which is `carrier_map` (d0 for R, d1 for L and I).
struct FreeAlgebra {
  CommaCat comma;
  Functor carrier_map;
};

FreeAlgebra monad_object(MonadKind kind, const Functor& f);

/// Unit A -> T(A, f): v_f for R, u_f for L, i_f for I.
Functor monad_unit(MonadKind kind, const Functor& f, const FreeAlgebra& t);

/// Multiplication T(T(A, f)) -> T(A, f).
Functor monad_multiplication(MonadKind kind, const FreeAlgebra& tt, const FreeAlgebra& t);

/// T on a morphism t: (A, f) -> (A', f2) of Cat/B, i.e. f2 ∘ t = f.
Functor monad_map(MonadKind kind, const Functor& t, const FreeAlgebra& source,
                  const FreeAlgebra& target);

struct MonadLawReport {
  bool left_unit = false;   // m ∘ u_T = id
  bool right_unit = false;  // m ∘ T(u) = id
  bool associativity = false;
  bool ok() const { return left_unit && right_unit && associativity; }
};

MonadLawReport check_monad_laws(MonadKind kind, const Functor& f);

/// Chevalley comparison A/A -> B/f (fibration side) or A/A -> f/B
/// (opfibration side).
Functor chevalley_fib(const Functor& f, const CommaCat& arrows_of_a, const CommaCat& b_over_f);
Functor chevalley_opfib(const Functor& f, const CommaCat& arrows_of_a, const CommaCat& f_over_b);

}  // namespace fibrifier
