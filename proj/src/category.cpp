#include "fibrifier/category.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

namespace fibrifier {

namespace {

std::string idx(const char* what, long i) { return std::string(what) + " " + std::to_string(i); }

}  // namespace

FinCat::FinCat() { index(); }

FinCat::FinCat(int object_count, std::vector<Arrow> arrows, std::vector<int> identities,
               const std::vector<ComposeEntry>& compose)
    : objects_(object_count), arrows_(std::move(arrows)), identity_(std::move(identities)) {
  if (objects_ < 0) throw IndexOutOfRange("negative object count");
  const int m = morphism_count();
  for (int i = 0; i < m; ++i) {
    const Arrow& a = arrows_[i];
    if (a.dom < 0 || a.dom >= objects_ || a.cod < 0 || a.cod >= objects_)
      throw IndexOutOfRange(idx("morphism endpoint out of range at morphism", i));
  }
  if (static_cast<int>(identity_.size()) != objects_)
    throw IndexOutOfRange("identities must list one morphism per object");
  for (int a = 0; a < objects_; ++a)
    if (identity_[a] < 0 || identity_[a] >= m)
      throw IndexOutOfRange(idx("identity out of range at object", a));
  index();
  for (const ComposeEntry& e : compose) {
    if (e.g < 0 || e.g >= m || e.f < 0 || e.f >= m || e.gf < 0 || e.gf >= m)
      throw IndexOutOfRange("compose entry refers to a missing morphism: [" +
                            std::to_string(e.g) + "," + std::to_string(e.f) + "," +
                            std::to_string(e.gf) + "]");
    if (arrows_[e.f].cod != arrows_[e.g].dom)
      throw IndexOutOfRange("compose entry for a non-composable pair: [" + std::to_string(e.g) +
                            "," + std::to_string(e.f) + "]");
    int& slot = after_[e.f][out_pos_[e.g]];
    if (slot >= 0 && slot != e.gf)
      throw IndexOutOfRange("conflicting compose entries for [" + std::to_string(e.g) + "," +
                            std::to_string(e.f) + "]");
    slot = e.gf;
  }
}

FinCat FinCat::from_function(int object_count, std::vector<Arrow> arrows,
                             std::vector<int> identities,
                             const std::function<int(int, int)>& compose) {
  FinCat c(object_count, std::move(arrows), std::move(identities), {});
  for (int f = 0; f < c.morphism_count(); ++f) {
    const auto& next = c.out_[c.arrows_[f].cod];
    for (std::size_t k = 0; k < next.size(); ++k) c.after_[f][k] = compose(next[k], f);
  }
  return c;
}

void FinCat::index() {
  const int m = morphism_count();
  out_.assign(objects_, {});
  in_.assign(objects_, {});
  out_pos_.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    out_pos_[i] = static_cast<int>(out_[arrows_[i].dom].size());
    out_[arrows_[i].dom].push_back(i);
    in_[arrows_[i].cod].push_back(i);
  }
  out_by_cod_ = out_;
  for (auto& v : out_by_cod_)
    std::stable_sort(v.begin(), v.end(),
                     [&](int x, int y) { return arrows_[x].cod < arrows_[y].cod; });
  after_.assign(m, {});
  for (int f = 0; f < m; ++f) after_[f].assign(out_[arrows_[f].cod].size(), -1);
}

int FinCat::compose(int g, int f) const {
  if (arrows_[f].cod != arrows_[g].dom)
    throw Error("compose: morphisms " + std::to_string(g) + " and " + std::to_string(f) +
                " are not composable");
  return after_[f][out_pos_[g]];
}

std::span<const int> FinCat::hom(int a, int b) const {
  const auto& v = out_by_cod_[a];
  auto lo = std::lower_bound(v.begin(), v.end(), b,
                             [&](int m, int key) { return arrows_[m].cod < key; });
  auto hi = std::upper_bound(lo, v.end(), b,
                             [&](int key, int m) { return key < arrows_[m].cod; });
  return {v.data() + (lo - v.begin()), static_cast<std::size_t>(hi - lo)};
}

int FinCat::inverse(int m) const {
  const int a = dom(m), b = cod(m);
  for (int n : hom(b, a))
    if (compose(n, m) == identity_[a] && compose(m, n) == identity_[b]) return n;
  return -1;
}

std::vector<ComposeEntry> FinCat::compose_entries() const {
  std::vector<ComposeEntry> out;
  for (int f = 0; f < morphism_count(); ++f) {
    const auto& next = out_[arrows_[f].cod];
    for (std::size_t k = 0; k < next.size(); ++k)
      if (after_[f][k] >= 0) out.push_back({next[k], f, after_[f][k]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const FinCat& a, const FinCat& b) {
  return a.objects_ == b.objects_ && a.arrows_ == b.arrows_ && a.identity_ == b.identity_ &&
         a.after_ == b.after_;
}

bool same_category(const CatPtr& a, const CatPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const Functor& a, const Functor& b) {
  return a.obj == b.obj && a.mor == b.mor && same_category(a.source, b.source) &&
         same_category(a.target, b.target);
}

// ---------------------------------------------------------------------------

ValidationReport validate(const FinCat& c) {
  ValidationReport r;
  auto bad = [&](std::string law, std::vector<int> w) {
    r.violations.push_back({std::move(law), std::move(w)});
  };
  const int m = c.morphism_count();
  for (int a = 0; a < c.object_count(); ++a) {
    const int i = c.identity(a);
    if (c.dom(i) != a || c.cod(i) != a) bad("identity-endpoints", {a});
  }
  for (int f = 0; f < m; ++f) {
    for (int g : c.out(c.cod(f))) {
      const int gf = c.compose(g, f);
      if (gf < 0) {
        bad("composite-undefined", {g, f});
        continue;
      }
      if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) bad("composite-endpoints", {g, f});
    }
  }
  if (!r.ok()) return r;
  for (int f = 0; f < m; ++f) {
    if (c.compose(c.identity(c.cod(f)), f) != f) bad("left-unit", {f});
    if (c.compose(f, c.identity(c.dom(f))) != f) bad("right-unit", {f});
  }
  for (int f = 0; f < m; ++f)
    for (int g : c.out(c.cod(f))) {
      const int gf = c.compose(g, f);
      for (int h : c.out(c.cod(g)))
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) bad("associativity", {h, g, f});
    }
  return r;
}

ValidationReport validate(const Functor& f) {
  if (!f.source || !f.target) throw IndexOutOfRange("functor without source or target");
  const FinCat& s = *f.source;
  const FinCat& t = *f.target;
  if (static_cast<int>(f.obj.size()) != s.object_count() ||
      static_cast<int>(f.mor.size()) != s.morphism_count())
    throw IndexOutOfRange("functor maps do not match the size of the source");
  for (int x : f.obj)
    if (x < 0 || x >= t.object_count()) throw IndexOutOfRange(idx("object image", x));
  for (int x : f.mor)
    if (x < 0 || x >= t.morphism_count()) throw IndexOutOfRange(idx("morphism image", x));
  ValidationReport r;
  auto bad = [&](std::string law, std::vector<int> w) {
    r.violations.push_back({std::move(law), std::move(w)});
  };
  for (int m = 0; m < s.morphism_count(); ++m) {
    if (t.dom(f.mor[m]) != f.obj[s.dom(m)]) bad("preserves-dom", {m});
    if (t.cod(f.mor[m]) != f.obj[s.cod(m)]) bad("preserves-cod", {m});
  }
  for (int a = 0; a < s.object_count(); ++a)
    if (f.mor[s.identity(a)] != t.identity(f.obj[a])) bad("preserves-identity", {a});
  if (!r.ok()) return r;
  for (int m = 0; m < s.morphism_count(); ++m)
    for (int g : s.out(s.cod(m)))
      if (f.mor[s.compose(g, m)] != t.compose(f.mor[g], f.mor[m]))
        bad("preserves-composition", {g, m});
  return r;
}

ValidationReport validate(const NatTrans& t) {
  ValidationReport r;
  if (!same_category(t.from.source, t.to.source) || !same_category(t.from.target, t.to.target)) {
    r.violations.push_back({"mismatched-functors", {}});
    return r;
  }
  const FinCat& s = *t.from.source;
  const FinCat& d = *t.from.target;
  if (static_cast<int>(t.component.size()) != s.object_count())
    throw IndexOutOfRange("component count does not match the source");
  for (int x : t.component)
    if (x < 0 || x >= d.morphism_count()) throw IndexOutOfRange(idx("component", x));
  for (int a = 0; a < s.object_count(); ++a) {
    const int c = t.component[a];
    if (d.dom(c) != t.from.obj[a] || d.cod(c) != t.to.obj[a])
      r.violations.push_back({"component-endpoints", {a}});
  }
  if (!r.ok()) return r;
  for (int m = 0; m < s.morphism_count(); ++m) {
    const int lhs = d.compose(t.to.mor[m], t.component[s.dom(m)]);
    const int rhs = d.compose(t.component[s.cod(m)], t.from.mor[m]);
    if (lhs != rhs) r.violations.push_back({"naturality", {m}});
  }
  return r;
}

// ---------------------------------------------------------------------------

Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, std::vector<int>(c->object_count()), std::vector<int>(c->morphism_count())};
  std::iota(f.obj.begin(), f.obj.end(), 0);
  std::iota(f.mor.begin(), f.mor.end(), 0);
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (!same_category(f.target, g.source))
    throw TargetMismatch("compose: target of the first functor is not the source of the second");
  Functor h{f.source, g.target, f.obj, f.mor};
  for (int& x : h.obj) x = g.obj[x];
  for (int& x : h.mor) x = g.mor[x];
  return h;
}

Functor constant_functor(const CatPtr& source, const CatPtr& target, int object) {
  return Functor{source, target, std::vector<int>(source->object_count(), object),
                 std::vector<int>(source->morphism_count(), target->identity(object))};
}

Functor point(const CatPtr& target, int object) {
  static const CatPtr one = share(FinCat(1, {{0, 0}}, {0}, {{0, 0, 0}}));
  return constant_functor(one, target, object);
}

NatTrans identity_nat(const Functor& f) {
  NatTrans t{f, f, std::vector<int>(f.source->object_count())};
  for (int a = 0; a < f.source->object_count(); ++a) t.component[a] = f.target->identity(f.obj[a]);
  return t;
}

NatTrans vertical(const NatTrans& beta, const NatTrans& alpha) {
  if (!(alpha.to == beta.from)) throw TargetMismatch("vertical: 2-cells are not composable");
  NatTrans t{alpha.from, beta.to, alpha.component};
  const FinCat& d = *alpha.from.target;
  for (std::size_t a = 0; a < t.component.size(); ++a)
    t.component[a] = d.compose(beta.component[a], alpha.component[a]);
  return t;
}

NatTrans whisker(const Functor& h, const NatTrans& alpha) {
  NatTrans t{compose(h, alpha.from), compose(h, alpha.to), alpha.component};
  for (int& x : t.component) x = h.mor[x];
  return t;
}

NatTrans whisker(const NatTrans& alpha, const Functor& k) {
  NatTrans t{compose(alpha.from, k), compose(alpha.to, k),
             std::vector<int>(k.source->object_count())};
  for (int a = 0; a < k.source->object_count(); ++a) t.component[a] = alpha.component[k.obj[a]];
  return t;
}

bool is_identity(const NatTrans& t) {
  const FinCat& d = *t.from.target;
  return std::all_of(t.component.begin(), t.component.end(),
                     [&](int c) { return d.is_identity(c); });
}

bool is_invertible(const NatTrans& t) {
  const FinCat& d = *t.from.target;
  return std::all_of(t.component.begin(), t.component.end(),
                     [&](int c) { return d.is_iso(c); });
}

NatTrans inverse(const NatTrans& t) {
  NatTrans r{t.to, t.from, t.component};
  for (int& c : r.component) {
    c = t.from.target->inverse(c);
    if (c < 0) throw Error("inverse: 2-cell is not invertible");
  }
  return r;
}

// ---------------------------------------------------------------------------

FinCat opposite(const FinCat& c) {
  std::vector<Arrow> arrows(c.arrows());
  for (Arrow& a : arrows) std::swap(a.dom, a.cod);
  return FinCat::from_function(c.object_count(), std::move(arrows), c.identities(),
                               [&](int g, int f) { return c.compose(f, g); });
}

Functor opposite(const Functor& f) {
  return Functor{share(opposite(*f.source)), share(opposite(*f.target)), f.obj, f.mor};
}

NatTrans opposite(const NatTrans& t) {
  Functor from = opposite(t.to);
  Functor to = opposite(t.from);
  to.source = from.source;
  to.target = from.target;
  return NatTrans{std::move(from), std::move(to), t.component};
}

Pullback pullback_category(const Functor& f, const Functor& g) {
  if (!same_category(f.target, g.target))
    throw TargetMismatch("pullback: functors do not share a target");
  const FinCat& a = *f.source;
  const FinCat& c = *g.source;
  Pullback p;
  std::vector<int> obj_index(static_cast<std::size_t>(a.object_count()) * c.object_count(), -1);
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < c.object_count(); ++y)
      if (f.obj[x] == g.obj[y]) {
        obj_index[static_cast<std::size_t>(x) * c.object_count() + y] =
            static_cast<int>(p.object_pairs.size());
        p.object_pairs.emplace_back(x, y);
      }
  std::unordered_map<long long, int> mor_index;
  std::vector<Arrow> arrows;
  for (int m = 0; m < a.morphism_count(); ++m)
    for (int n = 0; n < c.morphism_count(); ++n)
      if (f.mor[m] == g.mor[n]) {
        mor_index[static_cast<long long>(m) * c.morphism_count() + n] =
            static_cast<int>(p.morphism_pairs.size());
        p.morphism_pairs.emplace_back(m, n);
        arrows.push_back(
            {obj_index[static_cast<std::size_t>(a.dom(m)) * c.object_count() + c.dom(n)],
             obj_index[static_cast<std::size_t>(a.cod(m)) * c.object_count() + c.cod(n)]});
      }
  auto lookup = [&](int m, int n) {
    return mor_index.at(static_cast<long long>(m) * c.morphism_count() + n);
  };
  std::vector<int> ids;
  for (auto [x, y] : p.object_pairs) ids.push_back(lookup(a.identity(x), c.identity(y)));
  const auto& pairs = p.morphism_pairs;
  p.cat = share(FinCat::from_function(
      static_cast<int>(p.object_pairs.size()), std::move(arrows), std::move(ids),
      [&](int h, int k) {
        return lookup(a.compose(pairs[h].first, pairs[k].first),
                      c.compose(pairs[h].second, pairs[k].second));
      }));
  p.left = Functor{p.cat, f.source, {}, {}};
  p.right = Functor{p.cat, g.source, {}, {}};
  for (auto [x, y] : p.object_pairs) {
    p.left.obj.push_back(x);
    p.right.obj.push_back(y);
  }
  for (auto [m, n] : p.morphism_pairs) {
    p.left.mor.push_back(m);
    p.right.mor.push_back(n);
  }
  return p;
}

Subcategory full_subcategory(const CatPtr& c, const std::vector<int>& objects) {
  std::vector<int> pos(c->object_count(), -1);
  for (std::size_t i = 0; i < objects.size(); ++i) pos[objects[i]] = static_cast<int>(i);
  std::vector<char> keep(c->morphism_count(), 0);
  for (int m = 0; m < c->morphism_count(); ++m)
    keep[m] = pos[c->dom(m)] >= 0 && pos[c->cod(m)] >= 0;
  std::vector<int> mor_pos(c->morphism_count(), -1);
  std::vector<int> mors;
  std::vector<Arrow> arrows;
  for (int m = 0; m < c->morphism_count(); ++m)
    if (keep[m]) {
      mor_pos[m] = static_cast<int>(mors.size());
      mors.push_back(m);
      arrows.push_back({pos[c->dom(m)], pos[c->cod(m)]});
    }
  std::vector<int> ids;
  for (int x : objects) ids.push_back(mor_pos[c->identity(x)]);
  auto sub = share(FinCat::from_function(
      static_cast<int>(objects.size()), std::move(arrows), std::move(ids),
      [&](int g, int f) { return mor_pos[c->compose(mors[g], mors[f])]; }));
  return {sub, Functor{sub, c, objects, mors}};
}

bool closed_under_composition(const FinCat& c, const std::vector<char>& keep) {
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (!keep[m]) continue;
    if (!keep[c.identity(c.dom(m))] || !keep[c.identity(c.cod(m))]) return false;
    for (int g : c.out(c.cod(m)))
      if (keep[g] && !keep[c.compose(g, m)]) return false;
  }
  return true;
}

Subcategory subcategory(const CatPtr& c, const std::vector<char>& keep) {
  if (!closed_under_composition(*c, keep))
    throw Error("subcategory: morphism set is not closed under composition");
  std::vector<int> obj_pos(c->object_count(), -1);
  std::vector<int> objects;
  for (int a = 0; a < c->object_count(); ++a)
    if (keep[c->identity(a)]) {
      obj_pos[a] = static_cast<int>(objects.size());
      objects.push_back(a);
    }
  std::vector<int> mor_pos(c->morphism_count(), -1);
  std::vector<int> mors;
  std::vector<Arrow> arrows;
  for (int m = 0; m < c->morphism_count(); ++m)
    if (keep[m]) {
      mor_pos[m] = static_cast<int>(mors.size());
      mors.push_back(m);
      arrows.push_back({obj_pos[c->dom(m)], obj_pos[c->cod(m)]});
    }
  std::vector<int> ids;
  for (int x : objects) ids.push_back(mor_pos[c->identity(x)]);
  auto sub = share(FinCat::from_function(
      static_cast<int>(objects.size()), std::move(arrows), std::move(ids),
      [&](int g, int f) { return mor_pos[c->compose(mors[g], mors[f])]; }));
  return {sub, Functor{sub, c, objects, mors}};
}

}  // namespace fibrifier
