#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibrifier/category.hpp"
#include "fibrifier/colimit.hpp"

namespace fibrifier {

/// final: every b/f is nonempty and connected. initial: every f/b is.
bool is_final(const Functor& f);
bool is_initial(const Functor& f);

enum class Side { fib, opfib };
enum class FactorKind { comprehensive, groupoid };

struct FactorizationResult {
  FactorKind kind = FactorKind::comprehensive;
  Side side = Side::fib;
  Functor q;  // A -> mid
  CatPtr mid;
  Functor s;  // mid -> target
  /// Named verdicts, all expected true.
  std::map<std::string, bool> evidence;
  /// mid -> B when the factorization was computed in Fib(B).
  std::optional<Functor> over_base;
  /// Every morphism of mid as a zigzag of morphisms of the source.
  std::vector<std::vector<Letter>> words;

  bool evidence_ok() const;
  Quotient quotient() const { return Quotient{mid, q, words}; }
};

/// (final, discrete fibration) or (initial, discrete opfibration). Always
/// terminates.
FactorizationResult comprehensive_factorization(const Functor& f, Side side);

/// (coinverter of the identee, (op)fibration in groupoids). f must be a
/// fibration, resp. opfibration; throws NotAFibration or CapExceeded.
FactorizationResult groupoid_fibre_factorization(const Functor& f, Side side,
                                                 long cap = kDefaultCap);

/// A morphism p: f -> g of fibrations over a common base, with g∘p = f.
struct FibBMorphism {
  Functor f;
  Functor g;
  Functor p;
};

/// Empty when f and g are fibrations with the same target, g∘p = f and p
/// sends chosen lifts of f to g-cartesian arrows.
std::vector<std::string> fibB_violations(const FibBMorphism& m);
bool is_cartesian_functor(const FibBMorphism& m);

/// The restriction of p to the fibres over b.
Functor fibre_restriction(const FibBMorphism& m, int b);

/// Whether every fibre restriction is an opfibration (discrete when asked).
bool is_fibrewise_opfibration(const FibBMorphism& m, bool discrete);

enum class FibBMode { coidentifier, coinverter };

/// Factors p fibrewise and reassembles over B. Throws
/// NotFibrewiseOpfibration, or CapExceeded in coinverter mode.
FactorizationResult factor_in_fibB(const FibBMorphism& m, FibBMode mode, long cap = kDefaultCap);

/// Checks that r.q is the coidentifier (coinverter) of the identee of r.s∘r.q,
/// computed generically in Cat: the comparison out of the generic quotient
/// exists and is an isomorphism.
bool matches_generic_quotient(const FactorizationResult& r, bool coinverter, long cap = kDefaultCap);

struct FactorizationIso {
  Functor forward;   // a.mid -> b.mid
  Functor backward;  // b.mid -> a.mid
};

/// An isomorphism of middle categories commuting with both legs.
std::optional<FactorizationIso> compare_factorizations(const FactorizationResult& a,
                                                       const FactorizationResult& b);

}  // namespace fibrifier
