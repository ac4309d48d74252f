#pragma once

// Coset enumeration (Hasselgrove-Leech-Trotter) for the trivial subgroup of a
// finitely presented group, which yields the regular representation of the
// group when it is finite.

#include <vector>

namespace fibrifier {

/// Letters are 2g for generator g and 2g+1 for its inverse. Words are read
/// left to right as a right action: e·(x y) = (e·x)·y.
struct GroupPresentation {
  int generators = 0;
  std::vector<std::vector<int>> relators;
};

struct FiniteGroup {
  int order = 1;
  /// act[e][letter]; element 0 is the identity.
  std::vector<std::vector<int>> act;
  /// Shortlex-least word for every element.
  std::vector<std::vector<int>> words;

  int apply(int e, const std::vector<int>& word) const;
  /// a then b, i.e. the element represented by word(a) word(b).
  int multiply(int a, int b) const { return apply(a, words[b]); }
  int inverse(int a) const;
};

/// Throws CapExceeded when more than `cap` live cosets are needed.
FiniteGroup enumerate_group(const GroupPresentation& p, long cap);

}  // namespace fibrifier
