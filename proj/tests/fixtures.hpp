#pragma once

#include <vector>

#include "fibrifier/catalog.hpp"
#include "fibrifier/comma.hpp"

namespace fixtures {

using namespace fibrifier;

inline std::vector<Functor> sample_fibrations() {
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  CatPtr sq = share(catalog::square());
  CatPtr z2 = share(catalog::cyclic_group(2));
  std::vector<Functor> out;
  out.push_back(identity_functor(sq));
  out.push_back(comma(identity_functor(sq), identity_functor(sq)).right_proj);
  out.push_back(monad_object(MonadKind::R, catalog::thin_functor(two, iso, {0, 1})).carrier_map);
  out.push_back(monad_object(MonadKind::R, point(iso, 0)).carrier_map);
  CatPtr p = share(catalog::product(*two, *z2));
  out.push_back(catalog::projection(p, two, z2, true));
  out.push_back(comma(identity_functor(two), identity_functor(two)).right_proj);
  return out;
}

/// id_B × h: B × X -> B × Y, with the layout of catalog::product.
inline Functor product_with(const CatPtr& bx, const CatPtr& by, const Functor& h) {
  int nx = h.source->object_count(), ny = h.target->object_count();
  int kx = h.source->morphism_count(), ky = h.target->morphism_count();
  Functor p{bx, by, std::vector<int>(bx->object_count()), std::vector<int>(bx->morphism_count())};
  for (int o = 0; o < bx->object_count(); ++o) p.obj[o] = (o / nx) * ny + h.obj[o % nx];
  for (int m = 0; m < bx->morphism_count(); ++m) p.mor[m] = (m / kx) * ky + h.mor[m % kx];
  return p;
}

}  // namespace fixtures
