#include "fibrifier/adjoint.hpp"

#include <algorithm>
#include <numeric>

namespace fibrifier {

std::optional<int> terminal_object(const FinCat& c) {
  for (int t = 0; t < c.object_count(); ++t) {
    bool ok = true;
    for (int x = 0; x < c.object_count() && ok; ++x) ok = c.hom(x, t).size() == 1;
    if (ok) return t;
  }
  return std::nullopt;
}

std::optional<int> initial_object(const FinCat& c) {
  for (int t = 0; t < c.object_count(); ++t) {
    bool ok = true;
    for (int x = 0; x < c.object_count() && ok; ++x) ok = c.hom(t, x).size() == 1;
    if (ok) return t;
  }
  return std::nullopt;
}

Components connected_components(const CatPtr& c) {
  const int n = c->object_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Arrow& a : c->arrows()) {
    int x = find(a.dom), y = find(a.cod);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  Components r;
  r.class_of.assign(n, -1);
  std::vector<int> number(n, -1);
  int count = 0;
  for (int a = 0; a < n; ++a) {
    int root = find(a);
    if (number[root] < 0) number[root] = count++;
    r.class_of[a] = number[root];
  }
  std::vector<Arrow> arrows;
  std::vector<int> ids;
  std::vector<ComposeEntry> table;
  for (int k = 0; k < count; ++k) {
    arrows.push_back({k, k});
    ids.push_back(k);
    table.push_back({k, k, k});
  }
  r.discrete = share(FinCat(count, arrows, ids, table));
  r.quotient = Functor{c, r.discrete, r.class_of, std::vector<int>(c->morphism_count())};
  for (int m = 0; m < c->morphism_count(); ++m) r.quotient.mor[m] = r.class_of[c->dom(m)];
  return r;
}

bool triangle_identities_hold(const Adjunction& adj) {
  const FinCat& c = *adj.left.source;
  const FinCat& d = *adj.left.target;
  // ε_{L c} ∘ L(η_c) = id_{L c}
  for (int x = 0; x < c.object_count(); ++x) {
    int lx = adj.left.obj[x];
    if (d.compose(adj.counit.component[lx], adj.left.mor[adj.unit.component[x]]) !=
        d.identity(lx))
      return false;
  }
  // R(ε_y) ∘ η_{R y} = id_{R y}
  for (int y = 0; y < d.object_count(); ++y) {
    int ry = adj.right.obj[y];
    if (c.compose(adj.right.mor[adj.counit.component[y]], adj.unit.component[ry]) !=
        c.identity(ry))
      return false;
  }
  return true;
}

namespace {

// (c, e: F c -> y) is terminal in F/y when every (c', b: F c' -> y) factors
// through e along exactly one a: c' -> c.
bool terminal_in_slice(const Functor& F, int y, int c, int e) {
  const FinCat& src = *F.source;
  const FinCat& dst = *F.target;
  std::vector<int> hits;
  for (int c2 = 0; c2 < src.object_count(); ++c2) {
    auto targets = dst.hom(F.obj[c2], y);
    if (targets.empty()) continue;
    hits.clear();
    for (int a : src.hom(c2, c)) hits.push_back(dst.compose(e, F.mor[a]));
    if (hits.size() != targets.size()) return false;
    std::sort(hits.begin(), hits.end());
    if (std::adjacent_find(hits.begin(), hits.end()) != hits.end()) return false;
  }
  return true;
}

}  // namespace

std::optional<Adjunction> find_right_adjoint(const Functor& F, const ComponentFilter& accept) {
  const FinCat& src = *F.source;
  const FinCat& dst = *F.target;
  const int ny = dst.object_count();
  std::vector<int> robj(ny), eps(ny);
  for (int y = 0; y < ny; ++y) {
    bool found = false;
    for (int c = 0; c < src.object_count() && !found; ++c) {
      for (int e : dst.hom(F.obj[c], y)) {
        if (accept && !accept(y, e)) continue;
        if (terminal_in_slice(F, y, c, e)) {
          robj[y] = c;
          eps[y] = e;
          found = true;
          break;
        }
      }
    }
    if (!found) return std::nullopt;
  }

  Functor R{F.target, F.source, robj, std::vector<int>(dst.morphism_count(), -1)};
  for (int d = 0; d < dst.morphism_count(); ++d) {
    int y = dst.dom(d), y2 = dst.cod(d);
    int want = dst.compose(d, eps[y]);
    for (int a : src.hom(robj[y], robj[y2]))
      if (dst.compose(eps[y2], F.mor[a]) == want) {
        R.mor[d] = a;
        break;
      }
  }
  NatTrans unit{identity_functor(F.source), compose(R, F),
                std::vector<int>(src.object_count(), -1)};
  for (int c = 0; c < src.object_count(); ++c) {
    int fc = F.obj[c];
    for (int a : src.hom(c, robj[fc]))
      if (dst.compose(eps[fc], F.mor[a]) == dst.identity(fc)) {
        unit.component[c] = a;
        break;
      }
  }
  NatTrans counit{compose(F, R), identity_functor(F.target), eps};
  Adjunction adj{F, R, unit, counit};
  if (!triangle_identities_hold(adj))
    throw Error("find_right_adjoint: assembled adjunction fails the triangle identities");
  return adj;
}

std::optional<Adjunction> find_right_adjoint(const Functor& F, bool require_identity_counit) {
  if (!require_identity_counit) return find_right_adjoint(F, ComponentFilter{});
  const FinCat& d = *F.target;
  return find_right_adjoint(F, [&d](int, int e) { return d.is_identity(e); });
}

std::optional<Adjunction> find_left_adjoint(const Functor& F, const ComponentFilter& accept) {
  Functor op = opposite(F);
  auto dual = find_right_adjoint(op, accept);
  if (!dual) return std::nullopt;
  Functor L{F.target, F.source, dual->right.obj, dual->right.mor};
  NatTrans unit{identity_functor(F.target), compose(F, L), dual->counit.component};
  NatTrans counit{compose(L, F), identity_functor(F.source), dual->unit.component};
  Adjunction adj{L, F, unit, counit};
  if (!triangle_identities_hold(adj))
    throw Error("find_left_adjoint: assembled adjunction fails the triangle identities");
  return adj;
}

std::optional<Adjunction> find_left_adjoint(const Functor& F, bool require_identity_unit) {
  if (!require_identity_unit) return find_left_adjoint(F, ComponentFilter{});
  const FinCat& d = *F.target;
  return find_left_adjoint(F, [&d](int, int e) { return d.is_identity(e); });
}

// ---------------------------------------------------------------------------

namespace {

class Search {
 public:
  Search(const CatPtr& s, const CatPtr& t, const FunctorSearch& o)
      : src_(*s), dst_(*t), opt_(o), source_(s), target_(t) {
    obj_.assign(src_.object_count(), -1);
    mor_.assign(src_.morphism_count(), -1);
    obj_used_.assign(dst_.object_count(), 0);
    mor_used_.assign(dst_.morphism_count(), 0);
  }

  std::vector<Functor> run() {
    if (opt_.isomorphism && (src_.object_count() != dst_.object_count() ||
                             src_.morphism_count() != dst_.morphism_count()))
      return {};
    for (auto [a, x] : opt_.forced_objects)
      if (obj_[a] >= 0 && obj_[a] != x) return {};
      else obj_[a] = x;
    for (auto [m, n] : opt_.forced_morphisms) {
      for (auto [a, x] : {std::pair{src_.dom(m), dst_.dom(n)}, std::pair{src_.cod(m), dst_.cod(n)}})
        if (obj_[a] >= 0 && obj_[a] != x) return {};
        else obj_[a] = x;
    }
    for (int a = 0; a < src_.object_count(); ++a)
      if (obj_[a] >= 0) {
        if (!object_ok(a, obj_[a])) return {};
        ++obj_used_[obj_[a]];
      }
    objects(0);
    return std::move(found_);
  }

 private:
  bool done() const {
    return static_cast<long>(found_.size()) >= opt_.max_solutions ||
           (opt_.max_steps >= 0 && steps_ > opt_.max_steps);
  }

  bool object_ok(int a, int x) const {
    if (opt_.object_allowed && !opt_.object_allowed(a, x)) return false;
    if (opt_.isomorphism) {
      if (obj_used_[x]) return false;
      if (src_.hom(a, a).size() != dst_.hom(x, x).size()) return false;
      for (int b = 0; b < src_.object_count(); ++b) {
        if (b == a || obj_[b] < 0) continue;
        if (src_.hom(a, b).size() != dst_.hom(x, obj_[b]).size()) return false;
        if (src_.hom(b, a).size() != dst_.hom(obj_[b], x).size()) return false;
      }
    }
    return true;
  }

  std::vector<int> shuffled(std::vector<int> v) const {
    if (opt_.rng) std::shuffle(v.begin(), v.end(), *opt_.rng);
    return v;
  }

  void objects(int a) {
    if (done()) return;
    ++steps_;
    while (a < src_.object_count() && fixed_object(a)) ++a;
    if (a == src_.object_count()) {
      start_morphisms();
      return;
    }
    std::vector<int> cand(dst_.object_count());
    std::iota(cand.begin(), cand.end(), 0);
    for (int x : shuffled(cand)) {
      if (!object_ok(a, x)) continue;
      obj_[a] = x;
      ++obj_used_[x];
      objects(a + 1);
      --obj_used_[x];
      obj_[a] = -1;
      if (done()) return;
    }
  }

  bool fixed_object(int a) const {
    for (auto [b, x] : opt_.forced_objects)
      if (b == a) return true;
    for (auto [m, n] : opt_.forced_morphisms)
      if (src_.dom(m) == a || src_.cod(m) == a) return true;
    return false;
  }

  void start_morphisms() {
    trail_.clear();
    bool ok = true;
    for (int a = 0; a < src_.object_count() && ok; ++a)
      ok = assign(src_.identity(a), dst_.identity(obj_[a]));
    for (auto [m, n] : opt_.forced_morphisms)
      if (ok) ok = assign(m, n);
    if (ok) morphisms(0);
    undo(0);
  }

  bool morphism_ok(int m, int n) const {
    if (dst_.dom(n) != obj_[src_.dom(m)] || dst_.cod(n) != obj_[src_.cod(m)]) return false;
    if (opt_.isomorphism && mor_used_[n]) return false;
    if (opt_.morphism_allowed && !opt_.morphism_allowed(m, n)) return false;
    return true;
  }

  // Assigns m -> n and propagates through every composite with an already
  // assigned neighbour. Returns false on a conflict; the trail records every
  // assignment so the caller can undo.
  bool assign(int m0, int n0) {
    std::vector<std::pair<int, int>> queue{{m0, n0}};
    while (!queue.empty()) {
      auto [m, n] = queue.back();
      queue.pop_back();
      if (mor_[m] >= 0) {
        if (mor_[m] != n) return false;
        continue;
      }
      if (!morphism_ok(m, n)) return false;
      mor_[m] = n;
      ++mor_used_[n];
      trail_.push_back(m);
      for (int g : src_.out(src_.cod(m)))
        if (mor_[g] >= 0) queue.push_back({src_.compose(g, m), dst_.compose(mor_[g], n)});
      for (int f : src_.in(src_.dom(m)))
        if (mor_[f] >= 0) queue.push_back({src_.compose(m, f), dst_.compose(n, mor_[f])});
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      int m = trail_.back();
      trail_.pop_back();
      --mor_used_[mor_[m]];
      mor_[m] = -1;
    }
  }

  void morphisms(int m) {
    if (done()) return;
    ++steps_;
    while (m < src_.morphism_count() && mor_[m] >= 0) ++m;
    if (m == src_.morphism_count()) {
      found_.push_back(Functor{source_, target_, obj_, mor_});
      return;
    }
    auto hs = dst_.hom(obj_[src_.dom(m)], obj_[src_.cod(m)]);
    for (int n : shuffled(std::vector<int>(hs.begin(), hs.end()))) {
      std::size_t mark = trail_.size();
      if (assign(m, n)) morphisms(m + 1);
      undo(mark);
      if (done()) return;
    }
  }

  const FinCat& src_;
  const FinCat& dst_;
  const FunctorSearch& opt_;
  CatPtr source_, target_;
  std::vector<int> obj_, mor_, obj_used_, mor_used_, trail_;
  std::vector<Functor> found_;
  long steps_ = 0;
};

}  // namespace

std::vector<Functor> search_functors(const CatPtr& source, const CatPtr& target,
                                     const FunctorSearch& options) {
  return Search(source, target, options).run();
}

std::optional<Functor> find_isomorphism(const CatPtr& c, const CatPtr& d) {
  return find_isomorphism(c, d, FunctorSearch{});
}

std::optional<Functor> find_isomorphism(const CatPtr& c, const CatPtr& d, FunctorSearch options) {
  options.isomorphism = true;
  options.max_solutions = 1;
  auto found = search_functors(c, d, options);
  if (found.empty()) return std::nullopt;
  return found.front();
}

Functor invert(const Functor& iso) {
  Functor r{iso.target, iso.source, std::vector<int>(iso.target->object_count(), -1),
            std::vector<int>(iso.target->morphism_count(), -1)};
  for (std::size_t a = 0; a < iso.obj.size(); ++a) r.obj[iso.obj[a]] = static_cast<int>(a);
  for (std::size_t m = 0; m < iso.mor.size(); ++m) r.mor[iso.mor[m]] = static_cast<int>(m);
  if (std::count(r.obj.begin(), r.obj.end(), -1) || std::count(r.mor.begin(), r.mor.end(), -1))
    throw Error("invert: functor is not bijective");
  return r;
}

}  // namespace fibrifier
