#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fibrifier/adjoint.hpp"
#include "fibrifier/category.hpp"

namespace fibrifier {

/// Strong cartesianness: every δ: a'' -> a and g: f a'' -> f a' with
/// f α ∘ g = f δ factor as δ = α ∘ φ with f φ = g for exactly one φ.
bool is_cartesian_arrow(const Functor& f, int alpha);
bool is_opcartesian_arrow(const Functor& f, int alpha);

/// Marks every cartesian morphism of the source of f.
std::vector<char> cartesian_mask(const Functor& f);

/// Smallest-index cartesian α with cod α = a and f α = β. An identity β
/// lifts to id_a.
std::optional<int> cartesian_lift(const Functor& f, int a, int beta);
std::optional<int> opcartesian_lift(const Functor& f, int a, int beta);

/// A chosen cartesian lift for every pair (a, β) with cod β = f a.
struct Cleavage {
  Functor functor;
  std::vector<std::vector<int>> lift;  // lift[a][β], -1 when cod β != f a

  int at(int a, int beta) const { return lift[a][beta]; }
};

std::optional<Cleavage> extract_cleavage(const Functor& f);

enum class Criterion { direct, chevalley, algebra };

struct FibReport {
  bool opfibration = false;  // which notion was checked
  std::optional<bool> direct, chevalley, algebra;
  /// First (a, β) without a lift when the direct criterion fails.
  std::optional<std::pair<int, int>> missing_lift;
  std::optional<Adjunction> chevalley_adjunction;
  std::optional<Adjunction> algebra_adjunction;

  bool agreement() const;
  /// Common verdict; throws Error when the criteria disagree.
  bool verdict() const;
};

struct CriteriaSet {
  bool direct = true, chevalley = true, algebra = true;
};

FibReport is_fibration(const Functor& f, CriteriaSet criteria = {});
FibReport is_opfibration(const Functor& f, CriteriaSet criteria = {});

bool is_isofibration(const Functor& f);
bool is_street_fibration(const Functor& f);
bool is_street_opfibration(const Functor& f);
bool is_discrete_fibration(const Functor& f);
bool is_discrete_opfibration(const Functor& f);
bool is_conservative(const Functor& f);
bool has_groupoidal_fibres(const Functor& f);

struct VerticalIsoFactorization {
  Functor middle;  // H
  NatTrans sigma;  // H => G, invertible
  NatTrans tau;    // F => H, vertical
};

/// α: F => G with f·α invertible factors as α = σ ∘ τ with σ invertible
/// and f·τ an identity. Throws NotIsofibration when an iso lift is missing
/// and Error when f·α is not invertible.
VerticalIsoFactorization factor_vertical_iso(const Functor& f, const NatTrans& alpha);

}  // namespace fibrifier
