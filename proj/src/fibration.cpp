#include "fibrifier/fibration.hpp"

#include <algorithm>
#include <functional>

#include "fibrifier/comma.hpp"

namespace fibrifier {

namespace {

bool cartesian(const FinCat& A, const FinCat& B, const Functor& f, int alpha,
               std::vector<std::pair<int, int>>& keys) {
  const int a1 = A.dom(alpha), a = A.cod(alpha);
  const int falpha = f.mor[alpha];
  for (int a2 = 0; a2 < A.object_count(); ++a2) {
    auto phis = A.hom(a2, a1);
    keys.clear();
    for (int phi : phis) keys.push_back({A.compose(alpha, phi), f.mor[phi]});
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) return false;
    long valid = 0;
    auto gs = B.hom(f.obj[a2], f.obj[a1]);
    if (gs.empty()) {
      if (!phis.empty()) return false;
      continue;
    }
    for (int delta : A.hom(a2, a)) {
      int fd = f.mor[delta];
      for (int g : gs)
        if (B.compose(falpha, g) == fd) ++valid;
    }
    if (valid != static_cast<long>(phis.size())) return false;
  }
  return true;
}

std::optional<int> lift_with(const Functor& f, int a, int beta, const std::vector<char>* mask) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  if (B.cod(beta) != f.obj[a]) throw Error("cartesian_lift: codomain of β is not f(a)");
  if (B.is_identity(beta)) return A.identity(a);
  std::vector<std::pair<int, int>> keys;
  for (int alpha : A.in(a)) {
    if (f.mor[alpha] != beta) continue;
    if (mask ? (*mask)[alpha] : cartesian(A, B, f, alpha, keys)) return alpha;
  }
  return std::nullopt;
}

bool street(const Functor& f) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  std::vector<char> mask = cartesian_mask(f);
  for (int a = 0; a < A.object_count(); ++a)
    for (int beta : B.in(f.obj[a])) {
      bool ok = false;
      int b = B.dom(beta);
      for (int alpha : A.in(a)) {
        if (!mask[alpha]) continue;
        for (int iota : B.hom(b, f.obj[A.dom(alpha)]))
          if (B.compose(f.mor[alpha], iota) == beta && B.is_iso(iota)) {
            ok = true;
            break;
          }
        if (ok) break;
      }
      if (!ok) return false;
    }
  return true;
}

bool discrete(const Functor& f) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  for (int a = 0; a < A.object_count(); ++a)
    for (int beta : B.in(f.obj[a])) {
      int n = 0;
      for (int alpha : A.in(a))
        if (f.mor[alpha] == beta) ++n;
      if (n != 1) return false;
    }
  return true;
}

std::optional<Adjunction> chevalley_right(const Functor& f) {
  CatPtr a = f.source;
  CommaCat aa = comma(identity_functor(a), identity_functor(a));
  CommaCat bf = comma(identity_functor(f.target), f);
  return find_right_adjoint(chevalley_fib(f, aa, bf), true);
}

std::optional<Adjunction> chevalley_left(const Functor& f) {
  CatPtr a = f.source;
  CommaCat aa = comma(identity_functor(a), identity_functor(a));
  CommaCat fb = comma(f, identity_functor(f.target));
  return find_left_adjoint(chevalley_opfib(f, aa, fb), true);
}

std::optional<Adjunction> algebra_right(const Functor& f) {
  FreeAlgebra t = monad_object(MonadKind::R, f);
  Functor v = monad_unit(MonadKind::R, f, t);
  const Functor& rf = t.carrier_map;
  const FinCat& B = *f.target;
  auto adj = find_right_adjoint(v, [&](int, int e) { return B.is_identity(rf.mor[e]); });
  if (!adj) return std::nullopt;
  if (!is_identity(whisker(rf, adj->counit)) || !is_identity(whisker(f, adj->unit)))
    return std::nullopt;
  return adj;
}

std::optional<Adjunction> algebra_left(const Functor& f) {
  FreeAlgebra t = monad_object(MonadKind::L, f);
  Functor u = monad_unit(MonadKind::L, f, t);
  const Functor& lf = t.carrier_map;
  const FinCat& B = *f.target;
  auto adj = find_left_adjoint(u, [&](int, int e) { return B.is_identity(lf.mor[e]); });
  if (!adj) return std::nullopt;
  if (!is_identity(whisker(lf, adj->unit)) || !is_identity(whisker(f, adj->counit)))
    return std::nullopt;
  return adj;
}

std::optional<std::pair<int, int>> first_missing_lift(const Functor& f) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  std::vector<char> mask = cartesian_mask(f);
  for (int a = 0; a < A.object_count(); ++a)
    for (int beta : B.in(f.obj[a]))
      if (!lift_with(f, a, beta, &mask)) return std::pair{a, beta};
  return std::nullopt;
}

}  // namespace

bool is_cartesian_arrow(const Functor& f, int alpha) {
  std::vector<std::pair<int, int>> keys;
  return cartesian(*f.source, *f.target, f, alpha, keys);
}

bool is_opcartesian_arrow(const Functor& f, int alpha) {
  return is_cartesian_arrow(opposite(f), alpha);
}

std::vector<char> cartesian_mask(const Functor& f) {
  std::vector<char> mask(f.source->morphism_count());
  std::vector<std::pair<int, int>> keys;
  for (int m = 0; m < f.source->morphism_count(); ++m)
    mask[m] = cartesian(*f.source, *f.target, f, m, keys);
  return mask;
}

std::optional<int> cartesian_lift(const Functor& f, int a, int beta) {
  return lift_with(f, a, beta, nullptr);
}

std::optional<int> opcartesian_lift(const Functor& f, int a, int beta) {
  if (f.target->dom(beta) != f.obj[a])
    throw Error("opcartesian_lift: domain of β is not f(a)");
  return lift_with(opposite(f), a, beta, nullptr);
}

std::optional<Cleavage> extract_cleavage(const Functor& f) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  std::vector<char> mask = cartesian_mask(f);
  Cleavage c{f, std::vector<std::vector<int>>(A.object_count(),
                                              std::vector<int>(B.morphism_count(), -1))};
  for (int a = 0; a < A.object_count(); ++a)
    for (int beta : B.in(f.obj[a])) {
      auto l = lift_with(f, a, beta, &mask);
      if (!l) return std::nullopt;
      c.lift[a][beta] = *l;
    }
  return c;
}

bool FibReport::agreement() const {
  std::vector<bool> v;
  for (const auto& x : {direct, chevalley, algebra})
    if (x) v.push_back(*x);
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

bool FibReport::verdict() const {
  if (!agreement()) throw Error("fibration criteria disagree");
  for (const auto& x : {direct, chevalley, algebra})
    if (x) return *x;
  throw Error("no fibration criterion was evaluated");
}

FibReport is_fibration(const Functor& f, CriteriaSet criteria) {
  FibReport r;
  if (criteria.direct) {
    r.missing_lift = first_missing_lift(f);
    r.direct = !r.missing_lift.has_value();
  }
  if (criteria.chevalley) {
    r.chevalley_adjunction = chevalley_right(f);
    r.chevalley = r.chevalley_adjunction.has_value();
  }
  if (criteria.algebra) {
    r.algebra_adjunction = algebra_right(f);
    r.algebra = r.algebra_adjunction.has_value();
  }
  return r;
}

FibReport is_opfibration(const Functor& f, CriteriaSet criteria) {
  FibReport r;
  r.opfibration = true;
  if (criteria.direct) {
    r.missing_lift = first_missing_lift(opposite(f));
    r.direct = !r.missing_lift.has_value();
  }
  if (criteria.chevalley) {
    r.chevalley_adjunction = chevalley_left(f);
    r.chevalley = r.chevalley_adjunction.has_value();
  }
  if (criteria.algebra) {
    r.algebra_adjunction = algebra_left(f);
    r.algebra = r.algebra_adjunction.has_value();
  }
  return r;
}

bool is_isofibration(const Functor& f) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  for (int a = 0; a < A.object_count(); ++a)
    for (int beta : B.in(f.obj[a])) {
      if (!B.is_iso(beta)) continue;
      bool ok = false;
      for (int alpha : A.in(a))
        if (f.mor[alpha] == beta && A.is_iso(alpha)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
  return true;
}

bool is_street_fibration(const Functor& f) { return street(f); }
bool is_street_opfibration(const Functor& f) { return street(opposite(f)); }
bool is_discrete_fibration(const Functor& f) { return discrete(f); }
bool is_discrete_opfibration(const Functor& f) { return discrete(opposite(f)); }

bool is_conservative(const Functor& f) {
  const FinCat& A = *f.source;
  for (int m = 0; m < A.morphism_count(); ++m)
    if (f.target->is_iso(f.mor[m]) && !A.is_iso(m)) return false;
  return true;
}

bool has_groupoidal_fibres(const Functor& f) {
  const FinCat& A = *f.source;
  for (int m = 0; m < A.morphism_count(); ++m)
    if (f.target->is_identity(f.mor[m]) && !A.is_iso(m)) return false;
  return true;
}

VerticalIsoFactorization factor_vertical_iso(const Functor& f, const NatTrans& alpha) {
  const FinCat& A = *f.source;
  const FinCat& B = *f.target;
  const Functor& F = alpha.from;
  const Functor& G = alpha.to;
  const FinCat& X = *F.source;
  const int nx = X.object_count();
  std::vector<int> sigma(nx), tau(nx), sigma_inv(nx);
  Functor H{F.source, F.target, std::vector<int>(nx), std::vector<int>(X.morphism_count())};
  for (int x = 0; x < nx; ++x) {
    int ax = alpha.component[x];
    int beta = f.mor[ax];
    if (!B.is_iso(beta)) throw Error("factor_vertical_iso: f·α is not invertible");
    int gx = G.obj[x];
    int s = -1;
    if (B.is_identity(beta)) {
      s = A.identity(gx);
    } else {
      for (int cand : A.in(gx))
        if (f.mor[cand] == beta && A.is_iso(cand)) {
          s = cand;
          break;
        }
    }
    if (s < 0) throw NotIsofibration("factor_vertical_iso: no invertible lift at object " +
                                     std::to_string(gx));
    sigma[x] = s;
    sigma_inv[x] = A.inverse(s);
    tau[x] = A.compose(sigma_inv[x], ax);
    H.obj[x] = A.dom(s);
  }
  for (int h = 0; h < X.morphism_count(); ++h) {
    int x = X.dom(h), y = X.cod(h);
    H.mor[h] = A.compose(sigma_inv[y], A.compose(G.mor[h], sigma[x]));
  }
  return {H, NatTrans{H, G, sigma}, NatTrans{F, H, tau}};
}

}  // namespace fibrifier
