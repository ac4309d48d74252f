#include "fibrifier/comma.hpp"

#include <algorithm>
#include <tuple>

namespace fibrifier {

int CommaCat::find_object(int a, int c, int beta) const {
  std::array<int, 3> key{a, c, beta};
  auto it = std::lower_bound(objects.begin(), objects.end(), key);
  if (it == objects.end() || *it != key) return -1;
  return static_cast<int>(it - objects.begin());
}

int CommaCat::find_morphism(int dom, int cod, int alpha, int gamma) const {
  const FinCat& k = *cat;
  for (int m : k.hom(dom, cod))
    if (morphisms[m][0] == alpha && morphisms[m][1] == gamma) return m;
  return -1;
}

CommaCat comma(const Functor& f, const Functor& g) {
  if (!same_category(f.target, g.target))
    throw TargetMismatch("comma: functors do not share a target");
  const FinCat& A = *f.source;
  const FinCat& C = *g.source;
  const FinCat& B = *f.target;

  CommaCat r;
  for (int a = 0; a < A.object_count(); ++a)
    for (int c = 0; c < C.object_count(); ++c)
      for (int beta : B.hom(f.obj[a], g.obj[c])) r.objects.push_back({a, c, beta});

  // (dom, cod, α, γ)
  std::vector<std::array<int, 4>> mors;
  for (int x = 0; x < static_cast<int>(r.objects.size()); ++x) {
    auto [a, c, beta] = r.objects[x];
    for (int alpha : A.out(a))
      for (int gamma : C.out(c)) {
        int a2 = A.cod(alpha), c2 = C.cod(gamma);
        int lhs = B.compose(g.mor[gamma], beta);
        for (int beta2 : B.hom(f.obj[a2], g.obj[c2]))
          if (B.compose(beta2, f.mor[alpha]) == lhs)
            mors.push_back({x, r.find_object(a2, c2, beta2), alpha, gamma});
      }
  }
  std::sort(mors.begin(), mors.end());

  std::vector<Arrow> arrows;
  std::vector<int> ids(r.objects.size(), -1);
  for (int i = 0; i < static_cast<int>(mors.size()); ++i) {
    auto [x, y, alpha, gamma] = mors[i];
    arrows.push_back({x, y});
    r.morphisms.push_back({alpha, gamma});
    if (x == y && A.is_identity(alpha) && C.is_identity(gamma)) ids[x] = i;
  }
  // Composite lookup by binary search on the sorted morphism keys.
  auto lookup = [&](int x, int y, int alpha, int gamma) {
    std::array<int, 4> key{x, y, alpha, gamma};
    auto it = std::lower_bound(mors.begin(), mors.end(), key);
    return it != mors.end() && *it == key ? static_cast<int>(it - mors.begin()) : -1;
  };
  FinCat k = FinCat::from_function(
      static_cast<int>(r.objects.size()), std::move(arrows), std::move(ids), [&](int m2, int m1) {
        return lookup(mors[m1][0], mors[m2][1], A.compose(mors[m2][2], mors[m1][2]),
                      C.compose(mors[m2][3], mors[m1][3]));
      });
  r.cat = share(std::move(k));

  const int no = static_cast<int>(r.objects.size());
  const int nm = static_cast<int>(r.morphisms.size());
  r.left_proj = Functor{r.cat, f.source, std::vector<int>(no), std::vector<int>(nm)};
  r.right_proj = Functor{r.cat, g.source, std::vector<int>(no), std::vector<int>(nm)};
  for (int x = 0; x < no; ++x) {
    r.left_proj.obj[x] = r.objects[x][0];
    r.right_proj.obj[x] = r.objects[x][1];
  }
  for (int m = 0; m < nm; ++m) {
    r.left_proj.mor[m] = r.morphisms[m][0];
    r.right_proj.mor[m] = r.morphisms[m][1];
  }
  r.canonical = NatTrans{compose(f, r.left_proj), compose(g, r.right_proj), std::vector<int>(no)};
  for (int x = 0; x < no; ++x) r.canonical.component[x] = r.objects[x][2];
  return r;
}

CommaCat iso_comma(const Functor& f) {
  CommaCat full = comma(f, identity_functor(f.target));
  const FinCat& B = *f.target;
  std::vector<int> keep;
  for (int x = 0; x < static_cast<int>(full.objects.size()); ++x)
    if (B.is_iso(full.objects[x][2])) keep.push_back(x);
  Subcategory sub = full_subcategory(full.cat, keep);

  CommaCat r;
  r.cat = sub.cat;
  for (int x : keep) r.objects.push_back(full.objects[x]);
  for (int m : sub.inclusion.mor) r.morphisms.push_back(full.morphisms[m]);
  r.left_proj = compose(full.left_proj, sub.inclusion);
  r.right_proj = compose(full.right_proj, sub.inclusion);
  r.canonical = whisker(full.canonical, sub.inclusion);
  return r;
}

Functor iso_comma_unit(const Functor& f, const CommaCat& iso) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  Functor u{f.source, iso.cat, std::vector<int>(A.object_count()),
            std::vector<int>(A.morphism_count())};
  for (int a = 0; a < A.object_count(); ++a)
    u.obj[a] = iso.find_object(a, f.obj[a], B.identity(f.obj[a]));
  for (int m = 0; m < A.morphism_count(); ++m)
    u.mor[m] = iso.find_morphism(u.obj[A.dom(m)], u.obj[A.cod(m)], m, f.mor[m]);
  return u;
}

// ---------------------------------------------------------------------------

FreeAlgebra monad_object(MonadKind kind, const Functor& f) {
  switch (kind) {
    case MonadKind::R: {
      CommaCat c = comma(identity_functor(f.target), f);
      Functor d0 = c.left_proj;
      return {std::move(c), std::move(d0)};
    }
    case MonadKind::L: {
      CommaCat c = comma(f, identity_functor(f.target));
      Functor d1 = c.right_proj;
      return {std::move(c), std::move(d1)};
    }
    case MonadKind::I: {
      CommaCat c = iso_comma(f);
      Functor d1 = c.right_proj;
      return {std::move(c), std::move(d1)};
    }
  }
  throw Error("monad_object: unknown monad");
}

Functor monad_unit(MonadKind kind, const Functor& f, const FreeAlgebra& t) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  const CommaCat& c = t.comma;
  Functor u{f.source, c.cat, std::vector<int>(A.object_count()),
            std::vector<int>(A.morphism_count())};
  for (int a = 0; a < A.object_count(); ++a) {
    int fa = f.obj[a];
    u.obj[a] = kind == MonadKind::R ? c.find_object(fa, a, B.identity(fa))
                                    : c.find_object(a, fa, B.identity(fa));
  }
  for (int m = 0; m < A.morphism_count(); ++m) {
    int x = u.obj[A.dom(m)], y = u.obj[A.cod(m)];
    u.mor[m] = kind == MonadKind::R ? c.find_morphism(x, y, f.mor[m], m)
                                    : c.find_morphism(x, y, m, f.mor[m]);
  }
  return u;
}

Functor monad_multiplication(MonadKind kind, const FreeAlgebra& tt, const FreeAlgebra& t) {
  const FinCat& B = *t.carrier_map.target;
  const CommaCat& outer = tt.comma;
  const CommaCat& inner = t.comma;
  const int no = outer.cat->object_count();
  const int nm = outer.cat->morphism_count();
  Functor m{outer.cat, inner.cat, std::vector<int>(no), std::vector<int>(nm)};
  for (int x = 0; x < no; ++x) {
    auto [p, q, beta] = outer.objects[x];
    if (kind == MonadKind::R) {
      // (b, (b', a, β'), β) ↦ (b, a, β' ∘ β)
      auto [b2, a, beta2] = inner.objects[q];
      (void)b2;
      m.obj[x] = inner.find_object(p, a, B.compose(beta2, beta));
    } else {
      // ((a, b, β'), b2, β) ↦ (a, b2, β ∘ β')
      auto [a, b, beta1] = inner.objects[p];
      (void)b;
      m.obj[x] = inner.find_object(a, q, B.compose(beta, beta1));
    }
  }
  for (int k = 0; k < nm; ++k) {
    auto [mu, nu] = outer.morphisms[k];
    int x = m.obj[outer.cat->dom(k)], y = m.obj[outer.cat->cod(k)];
    if (kind == MonadKind::R)
      m.mor[k] = inner.find_morphism(x, y, mu, inner.morphisms[nu][1]);
    else
      m.mor[k] = inner.find_morphism(x, y, inner.morphisms[mu][0], nu);
  }
  return m;
}

Functor monad_map(MonadKind kind, const Functor& t, const FreeAlgebra& source,
                  const FreeAlgebra& target) {
  const CommaCat& s = source.comma;
  const CommaCat& d = target.comma;
  const int no = s.cat->object_count();
  const int nm = s.cat->morphism_count();
  Functor r{s.cat, d.cat, std::vector<int>(no), std::vector<int>(nm)};
  for (int x = 0; x < no; ++x) {
    auto [p, q, beta] = s.objects[x];
    r.obj[x] = kind == MonadKind::R ? d.find_object(p, t.obj[q], beta)
                                    : d.find_object(t.obj[p], q, beta);
  }
  for (int k = 0; k < nm; ++k) {
    auto [mu, nu] = s.morphisms[k];
    int x = r.obj[s.cat->dom(k)], y = r.obj[s.cat->cod(k)];
    r.mor[k] = kind == MonadKind::R ? d.find_morphism(x, y, mu, t.mor[nu])
                                    : d.find_morphism(x, y, t.mor[mu], nu);
  }
  return r;
}

MonadLawReport check_monad_laws(MonadKind kind, const Functor& f) {
  FreeAlgebra t = monad_object(kind, f);
  FreeAlgebra tt = monad_object(kind, t.carrier_map);
  FreeAlgebra ttt = monad_object(kind, tt.carrier_map);
  Functor u = monad_unit(kind, f, t);
  Functor m = monad_multiplication(kind, tt, t);
  Functor id = identity_functor(t.comma.cat);

  MonadLawReport r;
  r.left_unit = compose(m, monad_unit(kind, t.carrier_map, tt)) == id;
  r.right_unit = compose(m, monad_map(kind, u, t, tt)) == id;
  Functor m_outer = monad_multiplication(kind, ttt, tt);
  Functor tm = monad_map(kind, m, ttt, tt);
  r.associativity = compose(m, m_outer) == compose(m, tm);
  return r;
}

Functor chevalley_fib(const Functor& f, const CommaCat& arrows_of_a, const CommaCat& b_over_f) {
  const CommaCat& aa = arrows_of_a;
  const int no = aa.cat->object_count();
  const int nm = aa.cat->morphism_count();
  Functor r{aa.cat, b_over_f.cat, std::vector<int>(no), std::vector<int>(nm)};
  for (int x = 0; x < no; ++x) {
    auto [a, a2, alpha] = aa.objects[x];
    r.obj[x] = b_over_f.find_object(f.obj[a], a2, f.mor[alpha]);
  }
  for (int k = 0; k < nm; ++k) {
    auto [m1, m2] = aa.morphisms[k];
    r.mor[k] = b_over_f.find_morphism(r.obj[aa.cat->dom(k)], r.obj[aa.cat->cod(k)], f.mor[m1], m2);
  }
  return r;
}

Functor chevalley_opfib(const Functor& f, const CommaCat& arrows_of_a, const CommaCat& f_over_b) {
  const CommaCat& aa = arrows_of_a;
  const int no = aa.cat->object_count();
  const int nm = aa.cat->morphism_count();
  Functor r{aa.cat, f_over_b.cat, std::vector<int>(no), std::vector<int>(nm)};
  for (int x = 0; x < no; ++x) {
    auto [a, a2, alpha] = aa.objects[x];
    r.obj[x] = f_over_b.find_object(a, f.obj[a2], f.mor[alpha]);
  }
  for (int k = 0; k < nm; ++k) {
    auto [m1, m2] = aa.morphisms[k];
    r.mor[k] = f_over_b.find_morphism(r.obj[aa.cat->dom(k)], r.obj[aa.cat->cod(k)], m1, f.mor[m2]);
  }
  return r;
}

}  // namespace fibrifier
