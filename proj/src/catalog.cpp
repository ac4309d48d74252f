#include "fibrifier/catalog.hpp"

#include <map>

namespace fibrifier::catalog {

FinCat preorder(int n, const std::vector<std::pair<int, int>>& generators) {
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) le[a][a] = 1;
  for (auto [a, b] : generators) le[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = 1;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  std::vector<int> ids(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le[a][b]) {
        index[a][b] = static_cast<int>(arrows.size());
        if (a == b) ids[a] = index[a][b];
        arrows.push_back({a, b});
      }
  std::vector<Arrow> copy = arrows;
  return FinCat::from_function(n, std::move(arrows), ids, [&](int g, int f) {
    return index[copy[f].dom][copy[g].cod];
  });
}

FinCat terminal() { return preorder(1, {}); }
FinCat discrete(int n) { return preorder(n, {}); }
FinCat arrow() { return preorder(2, {{0, 1}}); }
FinCat free_iso() { return preorder(2, {{0, 1}, {1, 0}}); }

FinCat chaotic(int n) {
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) all.push_back({a, b});
  return preorder(n, all);
}

FinCat square() { return product(arrow(), arrow()); }

FinCat cyclic_group(int n) {
  std::vector<Arrow> arrows(n, Arrow{0, 0});
  return FinCat::from_function(1, std::move(arrows), {0},
                               [n](int g, int f) { return (g + f) % n; });
}

FinCat idempotent() {
  return FinCat::from_function(1, {{0, 0}, {0, 0}}, {0}, [](int g, int f) { return g | f; });
}

FinCat free_category(int n, const std::vector<std::pair<int, int>>& edges) {
  // paths as edge sequences in application order
  std::vector<std::vector<int>> paths;
  std::vector<Arrow> arrows;
  std::vector<int> ids(n);
  for (int a = 0; a < n; ++a) {
    ids[a] = static_cast<int>(arrows.size());
    arrows.push_back({a, a});
    paths.push_back({});
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths.size() > 4096) throw Error("free_category: quiver has a cycle or too many paths");
    int end = arrows[i].cod;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (edges[e].first != end) continue;
      std::vector<int> w = paths[i];
      w.push_back(e);
      paths.push_back(std::move(w));
      arrows.push_back({arrows[i].dom, edges[e].second});
    }
  }
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (std::size_t i = 0; i < paths.size(); ++i)
    index[{arrows[i].dom, paths[i]}] = static_cast<int>(i);
  std::vector<Arrow> copy = arrows;
  return FinCat::from_function(n, std::move(arrows), ids, [&](int g, int f) {
    std::vector<int> w = paths[f];
    w.insert(w.end(), paths[g].begin(), paths[g].end());
    return index.at({copy[f].dom, w});
  });
}

FinCat coproduct(const FinCat& a, const FinCat& b) {
  int na = a.object_count(), ka = a.morphism_count();
  std::vector<Arrow> arrows = a.arrows();
  for (const Arrow& x : b.arrows()) arrows.push_back({x.dom + na, x.cod + na});
  std::vector<int> ids = a.identities();
  for (int i : b.identities()) ids.push_back(i + ka);
  return FinCat::from_function(na + b.object_count(), std::move(arrows), std::move(ids),
                               [&](int g, int f) {
                                 return f < ka ? a.compose(g, f) : b.compose(g - ka, f - ka) + ka;
                               });
}

FinCat kronecker() {
  // id0, u, v, id1 with u, v: 0 -> 1
  return FinCat(2, {{0, 0}, {0, 1}, {0, 1}, {1, 1}}, {0, 3},
                {{0, 0, 0}, {3, 3, 3}, {1, 0, 1}, {2, 0, 2}, {3, 1, 1}, {3, 2, 2}});
}

FinCat product(const FinCat& a, const FinCat& b) {
  const int na = a.object_count(), nb = b.object_count();
  std::vector<Arrow> arrows;
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> index;
  for (int m = 0; m < a.morphism_count(); ++m)
    for (int k = 0; k < b.morphism_count(); ++k) {
      index[{m, k}] = static_cast<int>(arrows.size());
      pairs.push_back({m, k});
      arrows.push_back({a.dom(m) * nb + b.dom(k), a.cod(m) * nb + b.cod(k)});
    }
  std::vector<int> ids(na * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) ids[x * nb + y] = index[{a.identity(x), b.identity(y)}];
  return FinCat::from_function(na * nb, std::move(arrows), ids, [&](int g, int f) {
    return index[{a.compose(pairs[g].first, pairs[f].first),
                  b.compose(pairs[g].second, pairs[f].second)}];
  });
}

Functor thin_functor(const CatPtr& source, const CatPtr& target, const std::vector<int>& obj) {
  Functor f{source, target, obj, std::vector<int>(source->morphism_count())};
  for (int m = 0; m < source->morphism_count(); ++m) {
    auto h = target->hom(obj[source->dom(m)], obj[source->cod(m)]);
    if (h.empty()) throw Error("thin_functor: object map is not monotone");
    f.mor[m] = h.front();
  }
  return f;
}

Functor projection(const CatPtr& product_cat, const CatPtr& a, const CatPtr& b, bool first) {
  const int nb = b->object_count();
  const int kb = b->morphism_count();
  Functor p{product_cat, first ? a : b, std::vector<int>(product_cat->object_count()),
            std::vector<int>(product_cat->morphism_count())};
  for (int x = 0; x < product_cat->object_count(); ++x) p.obj[x] = first ? x / nb : x % nb;
  for (int m = 0; m < product_cat->morphism_count(); ++m) p.mor[m] = first ? m / kb : m % kb;
  return p;
}

}  // namespace fibrifier::catalog
