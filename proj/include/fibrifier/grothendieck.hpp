#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibrifier/category.hpp"
#include "fibrifier/colimit.hpp"
#include "fibrifier/fibration.hpp"

namespace fibrifier {

/// A pseudofunctor B^op -> Cat with finite values.
///
/// reindex[β] for β: b' -> b is β*: fibre[b] -> fibre[b']. unit_iso[b][x] is
/// the component (id_b)* x -> x. comp_iso[{β, β'}] for β': b'' -> b' holds
/// the components β'* β* x -> (β ∘ β')* x, indexed by x in fibre[b].
struct PseudoFunctor {
  CatPtr base;
  std::vector<CatPtr> fibre;
  std::vector<Functor> reindex;
  std::vector<std::vector<int>> unit_iso;
  std::map<std::pair<int, int>, std::vector<int>> comp_iso;

  /// True when every coherence isomorphism is an identity.
  bool strict() const;
};

/// Identity coherence data for reindexings that compose strictly.
PseudoFunctor strict_pseudofunctor(const CatPtr& base, std::vector<CatPtr> fibres,
                                   std::vector<Functor> reindex);

/// Empty when P is a coherent pseudofunctor; otherwise descriptions of the
/// failed laws.
std::vector<std::string> coherence_violations(const PseudoFunctor& p);

/// The pseudofunctor of a fibration together with the fibre bookkeeping.
struct FibreDecomposition {
  PseudoFunctor pf;
  Cleavage cleavage;
  std::vector<std::vector<int>> fibre_objects;    // per b: local object -> object of A
  std::vector<std::vector<int>> fibre_morphisms;  // per b: local morphism -> morphism of A
  std::vector<int> local_object;                  // object of A -> index in its fibre
  std::vector<int> local_morphism;                // vertical morphism -> index, else -1
  /// For every morphism α of A over β: the vertical ξ with α = lift ∘ ξ, as
  /// a local morphism of the fibre over dom β.
  std::vector<int> vertical_part;
};

/// Throws NotAFibration when f has no cleavage.
FibreDecomposition to_pseudofunctor(const Functor& f);
FibreDecomposition to_pseudofunctor(const Functor& f, const Cleavage& cleavage);

struct GrothendieckResult {
  CatPtr total;
  Functor proj;
  Cleavage cleavage;
  /// (b, x) per object and (β, ξ) per morphism.
  std::vector<std::pair<int, int>> objects;
  std::vector<std::pair<int, int>> morphisms;

  int find_object(int b, int x) const;
  int find_morphism(int dom, int cod, int beta, int xi) const;
};

/// Throws IncoherentPseudoFunctor when P fails a coherence law.
GrothendieckResult grothendieck_construction(const PseudoFunctor& p);

enum class Reflection { pi0, groupoid };

struct FibrewiseResult {
  Functor q;  // A -> mid, over B
  Functor s;  // mid -> B
  GrothendieckResult mid;
  PseudoFunctor reflected;
  /// Fibre reflections q_b.
  std::vector<Quotient> fibre_units;
  /// Every morphism of mid as a zigzag of morphisms of A.
  std::vector<std::vector<Letter>> words;

  Quotient quotient() const { return Quotient{mid.total, q, words}; }
};

/// Applies π0 or the groupoid reflection to every fibre of a fibration and
/// reassembles. Throws NotAFibration, or CapExceeded in groupoid mode.
FibrewiseResult fibrewise_apply(const Functor& f, Reflection mode, long cap = kDefaultCap);

/// Reassembles fibre quotients q_b of the fibres of d over B. Each q_b must
/// be surjective on objects and admit the induced reindexings.
FibrewiseResult reassemble(const Functor& f, const FibreDecomposition& d,
                           std::vector<Quotient> units);

/// π0 as a quotient with empty words, for use with factor_through.
Quotient component_quotient(const CatPtr& c);

}  // namespace fibrifier
