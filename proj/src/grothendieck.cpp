#include "fibrifier/grothendieck.hpp"

#include <algorithm>
#include <array>

#include "fibrifier/adjoint.hpp"

namespace fibrifier {

bool PseudoFunctor::strict() const {
  for (std::size_t b = 0; b < unit_iso.size(); ++b)
    for (int c : unit_iso[b])
      if (!fibre[b]->is_identity(c)) return false;
  for (const auto& [key, comps] : comp_iso) {
    const FinCat& target = *fibre[base->dom(key.second)];
    for (int c : comps)
      if (!target.is_identity(c)) return false;
  }
  return true;
}

PseudoFunctor strict_pseudofunctor(const CatPtr& base, std::vector<CatPtr> fibres,
                                   std::vector<Functor> reindex) {
  PseudoFunctor p{base, std::move(fibres), std::move(reindex), {}, {}};
  const FinCat& B = *base;
  for (int b = 0; b < B.object_count(); ++b) p.unit_iso.push_back(p.fibre[b]->identities());
  for (int beta = 0; beta < B.morphism_count(); ++beta)
    for (int beta2 : B.in(B.dom(beta))) {
      const Functor& first = p.reindex[beta];
      const Functor& second = p.reindex[beta2];
      std::vector<int> comps;
      for (int x = 0; x < p.fibre[B.cod(beta)]->object_count(); ++x)
        comps.push_back(p.fibre[B.dom(beta2)]->identity(second.obj[first.obj[x]]));
      p.comp_iso[{beta, beta2}] = std::move(comps);
    }
  return p;
}

std::vector<std::string> coherence_violations(const PseudoFunctor& p) {
  std::vector<std::string> out;
  const FinCat& B = *p.base;
  auto name = [](const char* what, std::initializer_list<int> ids) {
    std::string s = what;
    for (int i : ids) s += " " + std::to_string(i);
    return s;
  };
  if (static_cast<int>(p.fibre.size()) != B.object_count() ||
      static_cast<int>(p.reindex.size()) != B.morphism_count() ||
      static_cast<int>(p.unit_iso.size()) != B.object_count()) {
    out.push_back("shape: fibre, reindex or unit data has the wrong length");
    return out;
  }
  for (int beta = 0; beta < B.morphism_count(); ++beta) {
    const Functor& r = p.reindex[beta];
    if (!same_category(r.source, p.fibre[B.cod(beta)]) ||
        !same_category(r.target, p.fibre[B.dom(beta)]) || !validate(r).ok())
      out.push_back(name("reindex: not a functor between the right fibres at", {beta}));
  }
  if (!out.empty()) return out;

  // unit isos
  for (int b = 0; b < B.object_count(); ++b) {
    const FinCat& F = *p.fibre[b];
    const Functor& r = p.reindex[B.identity(b)];
    const auto& u = p.unit_iso[b];
    if (static_cast<int>(u.size()) != F.object_count()) {
      out.push_back(name("unit: wrong number of components at", {b}));
      continue;
    }
    for (int x = 0; x < F.object_count(); ++x)
      if (u[x] < 0 || u[x] >= F.morphism_count() || F.dom(u[x]) != r.obj[x] ||
          F.cod(u[x]) != x || !F.is_iso(u[x]))
        out.push_back(name("unit: bad component at", {b, x}));
    if (!out.empty()) continue;
    for (int m = 0; m < F.morphism_count(); ++m)
      if (F.compose(u[F.cod(m)], r.mor[m]) != F.compose(m, u[F.dom(m)]))
        out.push_back(name("unit: not natural at", {b, m}));
  }

  // composition isos
  for (int beta = 0; beta < B.morphism_count(); ++beta)
    for (int beta2 : B.in(B.dom(beta))) {
      auto it = p.comp_iso.find({beta, beta2});
      const FinCat& src = *p.fibre[B.cod(beta)];
      const FinCat& dst = *p.fibre[B.dom(beta2)];
      if (it == p.comp_iso.end() || static_cast<int>(it->second.size()) != src.object_count()) {
        out.push_back(name("composition: missing components for", {beta, beta2}));
        continue;
      }
      const auto& phi = it->second;
      const Functor& r1 = p.reindex[beta];
      const Functor& r2 = p.reindex[beta2];
      const Functor& r12 = p.reindex[B.compose(beta, beta2)];
      bool ok = true;
      for (int x = 0; x < src.object_count() && ok; ++x)
        ok = phi[x] >= 0 && phi[x] < dst.morphism_count() &&
             dst.dom(phi[x]) == r2.obj[r1.obj[x]] && dst.cod(phi[x]) == r12.obj[x] &&
             dst.is_iso(phi[x]);
      for (int m = 0; m < src.morphism_count() && ok; ++m)
        ok = dst.compose(phi[src.cod(m)], r2.mor[r1.mor[m]]) ==
             dst.compose(r12.mor[m], phi[src.dom(m)]);
      if (!ok) out.push_back(name("composition: bad or unnatural components for", {beta, beta2}));
    }
  if (!out.empty() || p.strict()) return out;

  // associativity: two ways from β''* β'* β* to (β β' β'')*
  for (int beta = 0; beta < B.morphism_count(); ++beta)
    for (int beta2 : B.in(B.dom(beta)))
      for (int beta3 : B.in(B.dom(beta2))) {
        int b12 = B.compose(beta, beta2);
        int b23 = B.compose(beta2, beta3);
        const FinCat& dst = *p.fibre[B.dom(beta3)];
        const auto& phi12 = p.comp_iso.at({beta, beta2});
        const auto& phi12_3 = p.comp_iso.at({b12, beta3});
        const auto& phi23 = p.comp_iso.at({beta2, beta3});
        const auto& phi1_23 = p.comp_iso.at({beta, b23});
        const Functor& r1 = p.reindex[beta];
        const Functor& r3 = p.reindex[beta3];
        for (int x = 0; x < p.fibre[B.cod(beta)]->object_count(); ++x) {
          int left = dst.compose(phi12_3[x], r3.mor[phi12[x]]);
          int right = dst.compose(phi1_23[x], phi23[r1.obj[x]]);
          if (left != right) out.push_back(name("associativity: fails at", {beta, beta2, beta3, x}));
        }
      }
  // unit laws
  for (int beta = 0; beta < B.morphism_count(); ++beta) {
    int b = B.cod(beta), b2 = B.dom(beta);
    const auto& right = p.comp_iso.at({beta, B.identity(b2)});
    const auto& left = p.comp_iso.at({B.identity(b), beta});
    const Functor& r = p.reindex[beta];
    for (int x = 0; x < p.fibre[b]->object_count(); ++x) {
      if (right[x] != p.unit_iso[b2][r.obj[x]])
        out.push_back(name("unit law: right identity fails at", {beta, x}));
      if (left[x] != r.mor[p.unit_iso[b][x]])
        out.push_back(name("unit law: left identity fails at", {beta, x}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

FibreDecomposition to_pseudofunctor(const Functor& f) {
  auto c = extract_cleavage(f);
  if (!c) throw NotAFibration("to_pseudofunctor: functor has no cleavage");
  return to_pseudofunctor(f, *c);
}

FibreDecomposition to_pseudofunctor(const Functor& f, const Cleavage& cleavage) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  FibreDecomposition d;
  d.cleavage = cleavage;
  d.fibre_objects.assign(B.object_count(), {});
  d.fibre_morphisms.assign(B.object_count(), {});
  d.local_object.assign(A.object_count(), -1);
  d.local_morphism.assign(A.morphism_count(), -1);
  for (int a = 0; a < A.object_count(); ++a) {
    auto& v = d.fibre_objects[f.obj[a]];
    d.local_object[a] = static_cast<int>(v.size());
    v.push_back(a);
  }
  for (int m = 0; m < A.morphism_count(); ++m) {
    if (!B.is_identity(f.mor[m])) continue;
    auto& v = d.fibre_morphisms[f.obj[A.dom(m)]];
    d.local_morphism[m] = static_cast<int>(v.size());
    v.push_back(m);
  }

  d.pf.base = f.target;
  for (int b = 0; b < B.object_count(); ++b) {
    const auto& objs = d.fibre_objects[b];
    const auto& mors = d.fibre_morphisms[b];
    std::vector<Arrow> arrows;
    for (int m : mors) arrows.push_back({d.local_object[A.dom(m)], d.local_object[A.cod(m)]});
    std::vector<int> ids;
    for (int a : objs) ids.push_back(d.local_morphism[A.identity(a)]);
    d.pf.fibre.push_back(share(FinCat::from_function(
        static_cast<int>(objs.size()), std::move(arrows), std::move(ids),
        [&](int g, int h) { return d.local_morphism[A.compose(mors[g], mors[h])]; })));
  }

  // α = lift(cod α, f α) ∘ ξ with ξ vertical and unique by cartesianness.
  d.vertical_part.assign(A.morphism_count(), -1);
  for (int alpha = 0; alpha < A.morphism_count(); ++alpha) {
    int lift = cleavage.at(A.cod(alpha), f.mor[alpha]);
    for (int xi : A.hom(A.dom(alpha), A.dom(lift)))
      if (d.local_morphism[xi] >= 0 && A.compose(lift, xi) == alpha) {
        d.vertical_part[alpha] = d.local_morphism[xi];
        break;
      }
    if (d.vertical_part[alpha] < 0)
      throw NotAFibration("to_pseudofunctor: cleavage contains a non-cartesian lift");
  }

  for (int beta = 0; beta < B.morphism_count(); ++beta) {
    int b = B.cod(beta), b2 = B.dom(beta);
    const FinCat& src = *d.pf.fibre[b];
    Functor r{d.pf.fibre[b], d.pf.fibre[b2], std::vector<int>(src.object_count()),
              std::vector<int>(src.morphism_count())};
    for (int x = 0; x < src.object_count(); ++x)
      r.obj[x] = d.local_object[A.dom(cleavage.at(d.fibre_objects[b][x], beta))];
    for (int m = 0; m < src.morphism_count(); ++m) {
      int am = d.fibre_morphisms[b][m];
      int lift = cleavage.at(A.dom(am), beta);
      r.mor[m] = d.vertical_part[A.compose(am, lift)];
    }
    d.pf.reindex.push_back(std::move(r));
  }

  for (int b = 0; b < B.object_count(); ++b) {
    std::vector<int> u;
    for (int a : d.fibre_objects[b]) u.push_back(d.local_morphism[cleavage.at(a, B.identity(b))]);
    d.pf.unit_iso.push_back(std::move(u));
  }
  for (int beta = 0; beta < B.morphism_count(); ++beta)
    for (int beta2 : B.in(B.dom(beta))) {
      std::vector<int> comps;
      for (int a : d.fibre_objects[B.cod(beta)]) {
        int l1 = cleavage.at(a, beta);
        int l2 = cleavage.at(A.dom(l1), beta2);
        comps.push_back(d.vertical_part[A.compose(l1, l2)]);
      }
      d.pf.comp_iso[{beta, beta2}] = std::move(comps);
    }
  return d;
}

// ---------------------------------------------------------------------------

int GrothendieckResult::find_object(int b, int x) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), std::pair{b, x});
  if (it == objects.end() || *it != std::pair{b, x}) return -1;
  return static_cast<int>(it - objects.begin());
}

int GrothendieckResult::find_morphism(int dom, int cod, int beta, int xi) const {
  for (int m : total->hom(dom, cod))
    if (morphisms[m] == std::pair{beta, xi}) return m;
  return -1;
}

GrothendieckResult grothendieck_construction(const PseudoFunctor& p) {
  auto bad = coherence_violations(p);
  if (!bad.empty()) throw IncoherentPseudoFunctor("grothendieck_construction: " + bad.front());
  const FinCat& B = *p.base;
  GrothendieckResult g;
  for (int b = 0; b < B.object_count(); ++b)
    for (int x = 0; x < p.fibre[b]->object_count(); ++x) g.objects.push_back({b, x});

  std::vector<std::array<int, 4>> keys;  // (dom, cod, β, ξ)
  for (int o = 0; o < static_cast<int>(g.objects.size()); ++o) {
    auto [b2, x2] = g.objects[o];
    const FinCat& here = *p.fibre[b2];
    for (int beta : B.out(b2)) {
      int b = B.cod(beta);
      const Functor& r = p.reindex[beta];
      for (int x = 0; x < p.fibre[b]->object_count(); ++x)
        for (int xi : here.hom(x2, r.obj[x])) keys.push_back({o, g.find_object(b, x), beta, xi});
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Arrow> arrows;
  for (const auto& k : keys) {
    arrows.push_back({k[0], k[1]});
    g.morphisms.push_back({k[2], k[3]});
  }
  auto lookup = [&](int dom, int cod, int beta, int xi) {
    std::array<int, 4> key{dom, cod, beta, xi};
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    return it != keys.end() && *it == key ? static_cast<int>(it - keys.begin()) : -1;
  };
  std::vector<int> ids;
  for (int o = 0; o < static_cast<int>(g.objects.size()); ++o) {
    auto [b, x] = g.objects[o];
    int eps_inv = p.fibre[b]->inverse(p.unit_iso[b][x]);
    ids.push_back(lookup(o, o, B.identity(b), eps_inv));
  }
  // (β, ξ) ∘ (β', ξ') = (β β', φ_{β,β'}(x) ∘ β'*(ξ) ∘ ξ')
  FinCat total = FinCat::from_function(
      static_cast<int>(g.objects.size()), std::move(arrows), std::move(ids), [&](int m2, int m1) {
        const auto& k1 = keys[m1];
        const auto& k2 = keys[m2];
        int beta = k2[2], xi = k2[3], beta1 = k1[2], xi1 = k1[3];
        int x = g.objects[k2[1]].second;
        const FinCat& F = *p.fibre[B.dom(beta1)];
        int phi = p.comp_iso.at({beta, beta1})[x];
        int zeta = F.compose(phi, F.compose(p.reindex[beta1].mor[xi], xi1));
        return lookup(k1[0], k2[1], B.compose(beta, beta1), zeta);
      });
  g.total = share(std::move(total));
  g.proj = Functor{g.total, p.base, std::vector<int>(g.objects.size()),
                   std::vector<int>(g.morphisms.size())};
  for (std::size_t o = 0; o < g.objects.size(); ++o) g.proj.obj[o] = g.objects[o].first;
  for (std::size_t m = 0; m < g.morphisms.size(); ++m) g.proj.mor[m] = g.morphisms[m].first;

  g.cleavage.functor = g.proj;
  g.cleavage.lift.assign(g.objects.size(), std::vector<int>(B.morphism_count(), -1));
  for (int o = 0; o < static_cast<int>(g.objects.size()); ++o) {
    auto [b, x] = g.objects[o];
    for (int beta : B.in(b)) {
      if (B.is_identity(beta)) {
        g.cleavage.lift[o][beta] = g.total->identity(o);
        continue;
      }
      int b2 = B.dom(beta);
      int y = p.reindex[beta].obj[x];
      g.cleavage.lift[o][beta] =
          lookup(g.find_object(b2, y), o, beta, p.fibre[b2]->identity(y));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

Quotient component_quotient(const CatPtr& c) {
  Components k = connected_components(c);
  Quotient q;
  q.cat = k.discrete;
  q.q = k.quotient;
  q.words.assign(k.discrete->morphism_count(), {});
  return q;
}

FibrewiseResult fibrewise_apply(const Functor& f, Reflection mode, long cap) {
  FibreDecomposition d = to_pseudofunctor(f);
  std::vector<Quotient> units;
  for (const CatPtr& fibre : d.pf.fibre) {
    if (mode == Reflection::pi0) {
      units.push_back(component_quotient(fibre));
    } else {
      GroupoidReflection g = groupoid_reflection(fibre, cap);
      if (!g.groupoid) throw CapExceeded("groupoid reflection of a fibre exceeded the cap", cap);
      units.push_back(std::move(*g.groupoid));
    }
  }
  return reassemble(f, d, std::move(units));
}

FibrewiseResult reassemble(const Functor& f, const FibreDecomposition& d,
                           std::vector<Quotient> units) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  FibrewiseResult r;
  r.fibre_units = std::move(units);
  const auto& qb = r.fibre_units;

  PseudoFunctor& P = r.reflected;
  P.base = f.target;
  for (int b = 0; b < B.object_count(); ++b) P.fibre.push_back(qb[b].cat);
  for (int beta = 0; beta < B.morphism_count(); ++beta) {
    int b = B.cod(beta), b2 = B.dom(beta);
    auto h = factor_through(qb[b], compose(qb[b2].q, d.pf.reindex[beta]));
    if (!h) throw Error("reassemble: reindexing does not descend to the reflection");
    P.reindex.push_back(std::move(*h));
  }
  for (int b = 0; b < B.object_count(); ++b) {
    std::vector<int> u(qb[b].cat->object_count(), -1);
    for (int x = 0; x < d.pf.fibre[b]->object_count(); ++x)
      u[qb[b].q.obj[x]] = qb[b].q.mor[d.pf.unit_iso[b][x]];
    P.unit_iso.push_back(std::move(u));
  }
  for (const auto& [key, phi] : d.pf.comp_iso) {
    int b = B.cod(key.first), b3 = B.dom(key.second);
    std::vector<int> psi(qb[b].cat->object_count(), -1);
    for (int x = 0; x < static_cast<int>(phi.size()); ++x)
      psi[qb[b].q.obj[x]] = qb[b3].q.mor[phi[x]];
    P.comp_iso[key] = std::move(psi);
  }

  r.mid = grothendieck_construction(P);
  r.s = r.mid.proj;
  r.q = Functor{f.source, r.mid.total, std::vector<int>(A.object_count()),
                std::vector<int>(A.morphism_count())};
  for (int a = 0; a < A.object_count(); ++a) {
    int b = f.obj[a];
    r.q.obj[a] = r.mid.find_object(b, qb[b].q.obj[d.local_object[a]]);
  }
  for (int alpha = 0; alpha < A.morphism_count(); ++alpha) {
    int b2 = f.obj[A.dom(alpha)];
    int xi = qb[b2].q.mor[d.vertical_part[alpha]];
    r.q.mor[alpha] =
        r.mid.find_morphism(r.q.obj[A.dom(alpha)], r.q.obj[A.cod(alpha)], f.mor[alpha], xi);
  }

  // (β, ξ) = (β, id) ∘ (id, ξ); the first factor is the image of a chosen lift.
  std::vector<std::vector<int>> representative(B.object_count());
  for (int b = 0; b < B.object_count(); ++b) {
    representative[b].assign(qb[b].cat->object_count(), -1);
    for (int x = 0; x < static_cast<int>(qb[b].q.obj.size()); ++x)
      if (representative[b][qb[b].q.obj[x]] < 0)
        representative[b][qb[b].q.obj[x]] = d.fibre_objects[b][x];
  }
  for (int m = 0; m < r.mid.total->morphism_count(); ++m) {
    auto [beta, xi] = r.mid.morphisms[m];
    auto [b, x] = r.mid.objects[r.mid.total->cod(m)];
    int b2 = B.dom(beta);
    std::vector<Letter> w;
    for (const Letter& l : qb[b2].words[xi])
      w.push_back({d.fibre_morphisms[b2][l.morphism], l.inverse});
    if (!B.is_identity(beta)) w.push_back({d.cleavage.at(representative[b][x], beta), false});
    r.words.push_back(std::move(w));
  }
  return r;
}

}  // namespace fibrifier
