#pragma once

// Finite categories stored as total composition tables, together with
// functors and natural transformations between them.
//
// Objects and morphisms are identified by their position. A FinCat built
// from raw data is only checked for well-indexing; the category laws are
// checked by validate(), which every caller is expected to run once on
// untrusted input.

#include <compare>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fibrifier/errors.hpp"

namespace fibrifier {

struct Arrow {
  int dom = 0;
  int cod = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// One entry of a composition table: g ∘ f = gf.
struct ComposeEntry {
  int g = 0;
  int f = 0;
  int gf = 0;
  friend auto operator<=>(const ComposeEntry&, const ComposeEntry&) = default;
};

class FinCat {
 public:
  FinCat();

  /// Builds a category from raw tables. Throws IndexOutOfRange when an
  /// entry refers to a missing object or morphism, or when a compose entry
  /// names a non-composable pair. Missing entries are left undefined and
  /// reported by validate().
  FinCat(int object_count, std::vector<Arrow> arrows, std::vector<int> identities,
         const std::vector<ComposeEntry>& compose);

  /// Builds a category whose composition is given by a callback invoked on
  /// every composable pair (g, f).
  static FinCat from_function(int object_count, std::vector<Arrow> arrows,
                              std::vector<int> identities,
                              const std::function<int(int g, int f)>& compose);

  int object_count() const { return objects_; }
  int morphism_count() const { return static_cast<int>(arrows_.size()); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<int>& identities() const { return identity_; }

  int dom(int m) const { return arrows_[m].dom; }
  int cod(int m) const { return arrows_[m].cod; }
  int identity(int a) const { return identity_[a]; }
  bool is_identity(int m) const { return identity_[arrows_[m].dom] == m; }

  /// g ∘ f. Requires cod(f) == dom(g); returns -1 for an undefined entry.
  int compose(int g, int f) const;
  bool composable(int g, int f) const { return arrows_[f].cod == arrows_[g].dom; }

  /// Morphisms a -> b in increasing index order.
  std::span<const int> hom(int a, int b) const;
  /// Morphisms with domain (resp. codomain) a, in increasing index order.
  const std::vector<int>& out(int a) const { return out_[a]; }
  const std::vector<int>& in(int a) const { return in_[a]; }

  bool is_iso(int m) const { return inverse(m) >= 0; }
  /// Index of the inverse of m, or -1.
  int inverse(int m) const;

  /// All defined composition entries sorted lexicographically by (g, f).
  std::vector<ComposeEntry> compose_entries() const;

  friend bool operator==(const FinCat& a, const FinCat& b);

 private:
  void index();

  int objects_ = 0;
  std::vector<Arrow> arrows_;
  std::vector<int> identity_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  // out_by_cod_[a] lists out_[a] sorted by (cod, index); hom() is a slice.
  std::vector<std::vector<int>> out_by_cod_;
  // out_pos_[g] is the position of g inside out_[dom g].
  std::vector<int> out_pos_;
  // after_[f][out_pos_[g]] == g ∘ f
  std::vector<std::vector<int>> after_;
};

using CatPtr = std::shared_ptr<const FinCat>;

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

struct Functor {
  CatPtr source;
  CatPtr target;
  std::vector<int> obj;
  std::vector<int> mor;

  int operator()(int m) const { return mor[m]; }
  int on_object(int a) const { return obj[a]; }
  friend bool operator==(const Functor& a, const Functor& b);
};

struct NatTrans {
  Functor from;
  Functor to;
  std::vector<int> component;
  friend bool operator==(const NatTrans&, const NatTrans&) = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string law;
  std::vector<int> witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const FinCat& c);
ValidationReport validate(const Functor& f);
ValidationReport validate(const NatTrans& t);

// ---------------------------------------------------------------------------
// Functor and 2-cell algebra

Functor identity_functor(const CatPtr& c);
/// g ∘ f; throws TargetMismatch when f's target is not g's source.
Functor compose(const Functor& g, const Functor& f);
Functor constant_functor(const CatPtr& source, const CatPtr& target, int object);
/// Functor **1** -> target picking out an object.
Functor point(const CatPtr& target, int object);

bool same_category(const CatPtr& a, const CatPtr& b);

NatTrans identity_nat(const Functor& f);
/// Vertical composite beta ∘ alpha.
NatTrans vertical(const NatTrans& beta, const NatTrans& alpha);
/// Whiskering h·alpha (post-composition with a functor).
NatTrans whisker(const Functor& h, const NatTrans& alpha);
/// Whiskering alpha·k (pre-composition with a functor).
NatTrans whisker(const NatTrans& alpha, const Functor& k);
bool is_identity(const NatTrans& t);
bool is_invertible(const NatTrans& t);
NatTrans inverse(const NatTrans& t);

// ---------------------------------------------------------------------------
// Elementary constructions

FinCat opposite(const FinCat& c);
/// Opposite functor on the opposite categories; indices are unchanged.
Functor opposite(const Functor& f);
/// For alpha: F => G returns alpha^op: G^op => F^op.
NatTrans opposite(const NatTrans& t);

struct Pullback {
  CatPtr cat;
  Functor left;   // to the domain of f
  Functor right;  // to the domain of g
  /// Components of each object and morphism of the pullback.
  std::vector<std::pair<int, int>> object_pairs;
  std::vector<std::pair<int, int>> morphism_pairs;
};

/// Strict pullback of f: A -> B and g: C -> B.
Pullback pullback_category(const Functor& f, const Functor& g);

struct Subcategory {
  CatPtr cat;
  Functor inclusion;
};

/// Full subcategory on the listed objects, in the listed order.
Subcategory full_subcategory(const CatPtr& c, const std::vector<int>& objects);

/// True when the kept morphisms contain the identities of their endpoints
/// and are closed under composition.
bool closed_under_composition(const FinCat& c, const std::vector<char>& keep);
/// Subcategory on a closed morphism set. Objects are those whose identity is
/// kept, renumbered in increasing order. Throws Error if `keep` is not closed.
Subcategory subcategory(const CatPtr& c, const std::vector<char>& keep_morphism);

}  // namespace fibrifier
