#pragma once

#include <string>
#include <vector>

#include "fibrifier/category.hpp"
#include "fibrifier/factor.hpp"

namespace fibrifier {

/// A generating set of non-identity morphisms: the irreducible ones, then
/// greedily in index order whatever they do not reach. Sorted.
std::vector<int> generating_morphisms(const FinCat& c);

// Graphviz renderings. Objects are nodes and generating morphisms are
// edges; functors draw their object map as dashed edges between clusters.
std::string to_dot(const FinCat& c);
std::string to_dot(const Functor& f);
std::string to_dot(const FactorizationResult& r);

}  // namespace fibrifier
