#include "fibrifier/colimit.hpp"

#include <algorithm>
#include <numeric>

#include "fibrifier/adjoint.hpp"
#include "fibrifier/comma.hpp"
#include "fibrifier/coset.hpp"

namespace fibrifier {

namespace {

TwoCellDiagram arrows_with(const Functor& f, bool invertible) {
  CatPtr a = f.source;
  const FinCat& B = *f.target;
  CommaCat arr = comma(identity_functor(a), identity_functor(a));
  std::vector<int> keep;
  for (int x = 0; x < arr.cat->object_count(); ++x) {
    int image = f.mor[arr.objects[x][2]];
    if (invertible ? B.is_iso(image) : B.is_identity(image)) keep.push_back(x);
  }
  Subcategory sub = full_subcategory(arr.cat, keep);
  TwoCellDiagram d;
  d.apex = sub.cat;
  d.d0 = compose(arr.left_proj, sub.inclusion);
  d.d1 = compose(arr.right_proj, sub.inclusion);
  d.cell = NatTrans{d.d0, d.d1, std::vector<int>(keep.size())};
  for (std::size_t k = 0; k < keep.size(); ++k) d.cell.component[k] = arr.objects[keep[k]][2];
  return d;
}

// Todd-Coxeter style enumeration of the morphisms of a presented category.
// Nodes stand for morphisms; edges are post-composition with a generator.
class Enumerator {
 public:
  Enumerator(const PresentedCategory& p, long cap) : p_(p), cap_(cap) {
    out_.assign(p.object_count, {});
    local_.assign(p.generators.size(), 0);
    for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
      local_[g] = static_cast<int>(out_[p.generators[g].dom].size());
      out_[p.generators[g].dom].push_back(g);
    }
    rels_.assign(p.object_count, {});
    for (const Relation& r : p.relations) rels_[r.source].push_back(&r);
  }

  Realization run() {
    for (int x = 0; x < p_.object_count; ++x) identity_node_.push_back(add(x, x));
    for (int n = 0; n < static_cast<int>(src_.size()); ++n) {
      for (const Relation* r : rels_[cod_[n]]) {
        if (!alive(n)) break;
        int e1 = trace(n, r->lhs);
        int e2 = trace(n, r->rhs);
        merge_all(e1, e2);
      }
      if (!alive(n)) continue;
      for (std::size_t k = 0; k < edge_[n].size(); ++k)
        if (edge_[n][k] < 0) define(n, static_cast<int>(k));
    }
    return collect();
  }

 private:
  bool alive(int n) const { return parent_[n] == n; }

  int rep(int n) {
    while (parent_[n] != n) n = parent_[n] = parent_[parent_[n]];
    return n;
  }

  int add(int src, int cod) {
    if (live_ + 1 > cap_)
      throw CapExceeded("morphism enumeration exceeded the cap", cap_);
    int n = static_cast<int>(src_.size());
    src_.push_back(src);
    cod_.push_back(cod);
    edge_.emplace_back(out_[cod].size(), -1);
    parent_.push_back(n);
    ++live_;
    return n;
  }

  int define(int n, int k) {
    int g = out_[cod_[n]][k];
    int d = add(src_[n], p_.generators[g].cod);
    edge_[n][k] = d;
    return d;
  }

  int trace(int n, const Word& w) {
    int cur = rep(n);
    for (int g : w) {
      int k = local_[g];
      if (edge_[cur][k] < 0) define(cur, k);
      cur = rep(edge_[cur][k]);
    }
    return cur;
  }

  void merge_all(int a, int b) {
    std::vector<int> queue;
    auto merge = [&](int x, int y) {
      x = rep(x);
      y = rep(y);
      if (x == y) return;
      if (x > y) std::swap(x, y);
      parent_[y] = x;
      --live_;
      queue.push_back(y);
    };
    merge(a, b);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int e = queue[i];
      for (std::size_t k = 0; k < edge_[e].size(); ++k) {
        int t = edge_[e][k];
        if (t < 0) continue;
        int r = rep(e);
        if (edge_[r][k] < 0)
          edge_[r][k] = t;
        else
          merge(edge_[r][k], t);
      }
    }
  }

  Realization collect() {
    Realization r;
    std::vector<int> index(src_.size(), -1);
    std::vector<int> order;
    for (int x = 0; x < p_.object_count; ++x) {
      int start = rep(identity_node_[x]);
      std::size_t first = order.size();
      index[start] = static_cast<int>(order.size());
      order.push_back(start);
      r.normal_forms.push_back({});
      for (std::size_t i = first; i < order.size(); ++i) {
        int n = order[i];
        for (std::size_t k = 0; k < edge_[n].size(); ++k) {
          int t = rep(edge_[n][k]);
          if (index[t] >= 0) continue;
          index[t] = static_cast<int>(order.size());
          order.push_back(t);
          Word w = r.normal_forms[i];
          w.push_back(out_[cod_[n]][k]);
          r.normal_forms.push_back(std::move(w));
        }
      }
    }
    std::vector<Arrow> arrows;
    for (int n : order) arrows.push_back({src_[n], cod_[n]});
    std::vector<int> ids(p_.object_count);
    for (int x = 0; x < p_.object_count; ++x) ids[x] = index[rep(identity_node_[x])];
    FinCat c = FinCat::from_function(p_.object_count, std::move(arrows), ids, [&](int g, int f) {
      int cur = order[f];
      for (int gen : r.normal_forms[g]) cur = rep(edge_[cur][local_[gen]]);
      return index[cur];
    });
    r.cat = share(std::move(c));
    r.generator_image.resize(p_.generators.size());
    for (int g = 0; g < static_cast<int>(p_.generators.size()); ++g) {
      int n = rep(identity_node_[p_.generators[g].dom]);
      r.generator_image[g] = index[rep(edge_[n][local_[g]])];
    }
    return r;
  }

  const PresentedCategory& p_;
  long cap_;
  long live_ = 0;
  std::vector<std::vector<int>> out_;
  std::vector<int> local_;
  std::vector<std::vector<const Relation*>> rels_;
  std::vector<int> src_, cod_, parent_, identity_node_;
  std::vector<std::vector<int>> edge_;
};

std::vector<Letter> invert_word(const std::vector<Letter>& w) {
  std::vector<Letter> r(w.rbegin(), w.rend());
  for (Letter& l : r) l.inverse = !l.inverse;
  return r;
}

// Generators are the non-identity morphisms of A followed by formal inverses
// of the morphisms listed in `inverted`; composition of A is imposed.
struct Presentation {
  PresentedCategory p;
  std::vector<Letter> letters;  // per generator
  std::vector<int> gen_of;      // A morphism -> generator, -1 for identities
  std::vector<int> object_class;
};

Presentation present(const FinCat& A, const std::vector<int>& object_class, int classes) {
  Presentation r;
  r.object_class = object_class;
  r.p.object_count = classes;
  r.gen_of.assign(A.morphism_count(), -1);
  for (int m = 0; m < A.morphism_count(); ++m) {
    if (A.is_identity(m)) continue;
    r.gen_of[m] = static_cast<int>(r.p.generators.size());
    r.p.generators.push_back({object_class[A.dom(m)], object_class[A.cod(m)]});
    r.letters.push_back({m, false});
  }
  auto word = [&](int m) { return r.gen_of[m] < 0 ? Word{} : Word{r.gen_of[m]}; };
  for (int f = 0; f < A.morphism_count(); ++f) {
    if (A.is_identity(f)) continue;
    for (int g : A.out(A.cod(f))) {
      if (A.is_identity(g)) continue;
      r.p.relations.push_back(
          {object_class[A.dom(f)], {r.gen_of[f], r.gen_of[g]}, word(A.compose(g, f))});
    }
  }
  return r;
}

Quotient finish(const FinCat& A, const CatPtr& a, const Presentation& pr, long cap) {
  Realization real = realize(pr.p, cap);
  Quotient q;
  q.cat = real.cat;
  q.q = Functor{a, real.cat, std::vector<int>(A.object_count()),
                std::vector<int>(A.morphism_count())};
  for (int x = 0; x < A.object_count(); ++x) q.q.obj[x] = pr.object_class[x];
  for (int m = 0; m < A.morphism_count(); ++m)
    q.q.mor[m] = pr.gen_of[m] < 0 ? real.cat->identity(pr.object_class[A.dom(m)])
                                  : real.generator_image[pr.gen_of[m]];
  for (const Word& w : real.normal_forms) {
    std::vector<Letter> letters;
    for (int g : w) letters.push_back(pr.letters[g]);
    q.words.push_back(std::move(letters));
  }
  return q;
}

}  // namespace

TwoCellDiagram identee(const Functor& f) { return arrows_with(f, false); }
TwoCellDiagram invertee(const Functor& f) { return arrows_with(f, true); }

Realization realize(const PresentedCategory& p, long cap) { return Enumerator(p, cap).run(); }

Quotient identify_with_identities(const CatPtr& a, const std::vector<int>& morphisms, long cap) {
  const FinCat& A = *a;
  std::vector<int> parent(A.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int m : morphisms) {
    int x = find(A.dom(m)), y = find(A.cod(m));
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::vector<int> cls(A.object_count()), number(A.object_count(), -1);
  int classes = 0;
  for (int x = 0; x < A.object_count(); ++x) {
    int r = find(x);
    if (number[r] < 0) number[r] = classes++;
    cls[x] = number[r];
  }
  Presentation pr = present(A, cls, classes);
  std::vector<int> sorted = morphisms;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int m : sorted)
    if (!A.is_identity(m)) pr.p.relations.push_back({cls[A.dom(m)], {pr.gen_of[m]}, {}});
  return finish(A, a, pr, cap);
}

Quotient localize(const CatPtr& a, const std::vector<int>& morphisms, long cap) {
  const FinCat& A = *a;
  std::vector<int> cls(A.object_count());
  std::iota(cls.begin(), cls.end(), 0);
  Presentation pr = present(A, cls, A.object_count());
  std::vector<int> sorted = morphisms;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int m : sorted) {
    if (A.is_identity(m)) continue;
    int inv = static_cast<int>(pr.p.generators.size());
    pr.p.generators.push_back({A.cod(m), A.dom(m)});
    pr.letters.push_back({m, true});
    pr.p.relations.push_back({A.dom(m), {pr.gen_of[m], inv}, {}});
    pr.p.relations.push_back({A.cod(m), {inv, pr.gen_of[m]}, {}});
  }
  return finish(A, a, pr, cap);
}

Quotient coidentifier(const TwoCellDiagram& d, long cap) {
  return identify_with_identities(d.d0.target, d.cell.component, cap);
}

Quotient coinverter(const TwoCellDiagram& d, long cap) {
  return localize(d.d0.target, d.cell.component, cap);
}

std::optional<Functor> factor_through(const Quotient& q, const Functor& F) {
  const FinCat& Q = *q.cat;
  const FinCat& X = *F.target;
  Functor H{q.cat, F.target, std::vector<int>(Q.object_count(), -1),
            std::vector<int>(Q.morphism_count(), -1)};
  for (std::size_t a = 0; a < q.q.obj.size(); ++a) {
    int& slot = H.obj[q.q.obj[a]];
    if (slot >= 0 && slot != F.obj[a]) return std::nullopt;
    slot = F.obj[a];
  }
  if (std::count(H.obj.begin(), H.obj.end(), -1)) return std::nullopt;
  for (int m = 0; m < Q.morphism_count(); ++m) {
    int cur = X.identity(H.obj[Q.dom(m)]);
    for (const Letter& l : q.words[m]) {
      int x = F.mor[l.morphism];
      if (l.inverse) x = X.inverse(x);
      if (x < 0 || X.dom(x) != X.cod(cur)) return std::nullopt;
      cur = X.compose(x, cur);
    }
    H.mor[m] = cur;
  }
  if (!validate(H).ok() || !(compose(H, q.q) == F)) return std::nullopt;
  return H;
}

// ---------------------------------------------------------------------------

namespace {

// Eliminates generators through relators of length one (x = 1) and of the
// form x y^-1 (x = y), repeatedly, then renumbers the survivors.
struct Simplified {
  GroupPresentation pres;
  std::vector<int> image;  // old generator -> new generator, -1 when trivial
};

Simplified simplify(int generators, std::vector<std::vector<int>> relators) {
  std::vector<int> parent(generators);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> trivial(generators, 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto rewrite = [&](const std::vector<int>& w) {
    std::vector<int> out;
    for (int l : w) {
      int r = find(l / 2);
      if (trivial[r]) continue;
      int letter = 2 * r + (l & 1);
      if (!out.empty() && out.back() == (letter ^ 1))
        out.pop_back();
      else
        out.push_back(letter);
    }
    // cyclic reduction
    std::size_t i = 0, j = out.size();
    while (j - i >= 2 && out[i] == (out[j - 1] ^ 1)) ++i, --j;
    return std::vector<int>(out.begin() + i, out.begin() + j);
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& r : relators) {
      r = rewrite(r);
      if (r.size() == 1) {
        trivial[find(r[0] / 2)] = 1;
        changed = true;
        r.clear();
      } else if (r.size() == 2 && (r[0] & 1) != (r[1] & 1) && r[0] / 2 != r[1] / 2) {
        int x = find(r[0] / 2), y = find(r[1] / 2);
        parent[std::max(x, y)] = std::min(x, y);
        changed = true;
        r.clear();
      }
    }
    relators.erase(std::remove_if(relators.begin(), relators.end(),
                                  [](const auto& r) { return r.empty(); }),
                   relators.end());
  }
  Simplified s;
  s.image.assign(generators, -1);
  std::vector<int> number(generators, -1);
  for (int g = 0; g < generators; ++g) {
    int r = find(g);
    if (trivial[r]) continue;
    if (number[r] < 0) number[r] = s.pres.generators++;
    s.image[g] = number[r];
  }
  for (auto& r : relators) {
    std::vector<int> w;
    for (int l : rewrite(r)) w.push_back(2 * number[l / 2] + (l & 1));
    if (!w.empty()) s.pres.relators.push_back(std::move(w));
  }
  return s;
}

PresentedCategory localization_presentation(const FinCat& C) {
  std::vector<int> all(C.morphism_count());
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> cls(C.object_count());
  std::iota(cls.begin(), cls.end(), 0);
  Presentation pr = present(C, cls, C.object_count());
  for (int m = 0; m < C.morphism_count(); ++m) {
    if (C.is_identity(m)) continue;
    int inv = static_cast<int>(pr.p.generators.size());
    pr.p.generators.push_back({C.cod(m), C.dom(m)});
    pr.p.relations.push_back({C.dom(m), {pr.gen_of[m], inv}, {}});
    pr.p.relations.push_back({C.cod(m), {inv, pr.gen_of[m]}, {}});
  }
  pr.p.finite_realization_unknown = true;
  return pr.p;
}

}  // namespace

GroupoidReflection groupoid_reflection(const CatPtr& c, long cap) {
  const FinCat& C = *c;
  const int n = C.object_count();
  Components comps = connected_components(c);
  const int k = comps.discrete->object_count();
  std::vector<std::vector<int>> members(k);
  for (int x = 0; x < n; ++x) members[comps.class_of[x]].push_back(x);

  // Spanning trees: path[x] runs from the root of x's component to x.
  std::vector<std::vector<Letter>> path(n);
  std::vector<char> tree(C.morphism_count(), 0), seen(n, 0);
  for (int comp = 0; comp < k; ++comp) {
    int root = members[comp].front();
    std::vector<int> queue{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int x = queue[i];
      std::vector<int> incident(C.out(x));
      incident.insert(incident.end(), C.in(x).begin(), C.in(x).end());
      std::sort(incident.begin(), incident.end());
      incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
      for (int m : incident) {
        bool forward = C.dom(m) == x;
        int other = forward ? C.cod(m) : C.dom(m);
        if (seen[other]) continue;
        seen[other] = 1;
        tree[m] = 1;
        path[other] = path[x];
        path[other].push_back({m, !forward});
        queue.push_back(other);
      }
    }
  }

  // Group generators: non-tree, non-identity morphisms.
  std::vector<int> gen_of(C.morphism_count(), -1);
  std::vector<std::vector<int>> gens_in(k);
  std::vector<int> morphism_of_gen;
  for (int m = 0; m < C.morphism_count(); ++m) {
    if (tree[m] || C.is_identity(m)) continue;
    gen_of[m] = static_cast<int>(morphism_of_gen.size());
    morphism_of_gen.push_back(m);
  }

  GroupoidReflection result;
  std::vector<FiniteGroup> groups(k);
  std::vector<std::vector<int>> local_image(k);  // generator -> letter of the component group
  std::vector<int> gen_comp(morphism_of_gen.size());
  std::vector<std::vector<int>> comp_gens(k);
  for (int g = 0; g < static_cast<int>(morphism_of_gen.size()); ++g) {
    int comp = comps.class_of[C.dom(morphism_of_gen[g])];
    gen_comp[g] = static_cast<int>(comp_gens[comp].size());
    comp_gens[comp].push_back(g);
  }
  std::vector<std::vector<int>> rep_morphism(k);
  for (int comp = 0; comp < k; ++comp) {
    const int ng = static_cast<int>(comp_gens[comp].size());
    auto elem = [&](int m) {
      return gen_of[m] < 0 ? std::vector<int>{} : std::vector<int>{2 * gen_comp[gen_of[m]]};
    };
    std::vector<std::vector<int>> relators;
    for (int x : members[comp])
      for (int f : C.out(x)) {
        if (C.is_identity(f)) continue;
        for (int g : C.out(C.cod(f))) {
          if (C.is_identity(g)) continue;
          std::vector<int> w = elem(f);
          for (int l : elem(g)) w.push_back(l);
          for (int l : elem(C.compose(g, f))) w.push_back(l ^ 1);
          if (!w.empty()) relators.push_back(std::move(w));
        }
      }
    Simplified s = simplify(ng, relators);
    try {
      groups[comp] = enumerate_group(s.pres, cap);
    } catch (const CapExceeded&) {
      result.presentation = localization_presentation(C);
      return result;
    }
    local_image[comp] = s.image;
    rep_morphism[comp].assign(s.pres.generators, -1);
    for (int g = 0; g < ng; ++g)
      if (s.image[g] >= 0 && rep_morphism[comp][s.image[g]] < 0)
        rep_morphism[comp][s.image[g]] = morphism_of_gen[comp_gens[comp][g]];
  }

  // Morphisms (x, y, e) ordered by (x, y, e).
  std::vector<Arrow> arrows;
  std::vector<std::array<int, 3>> triples;
  std::vector<std::vector<int>> base(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x) {
    int comp = comps.class_of[x];
    for (int y : members[comp]) {
      base[x][y] = static_cast<int>(arrows.size());
      for (int e = 0; e < groups[comp].order; ++e) {
        arrows.push_back({x, y});
        triples.push_back({x, y, e});
      }
    }
  }
  std::vector<int> ids(n);
  for (int x = 0; x < n; ++x) ids[x] = base[x][x];
  FinCat g = FinCat::from_function(n, arrows, ids, [&](int m2, int m1) {
    auto [x, y, e1] = triples[m1];
    int e2 = triples[m2][2];
    int z = triples[m2][1];
    (void)y;
    return base[x][z] + groups[comps.class_of[x]].multiply(e1, e2);
  });

  Quotient q;
  q.cat = share(std::move(g));
  q.q = Functor{c, q.cat, std::vector<int>(n), std::vector<int>(C.morphism_count())};
  std::iota(q.q.obj.begin(), q.q.obj.end(), 0);
  for (int m = 0; m < C.morphism_count(); ++m) {
    int comp = comps.class_of[C.dom(m)];
    int e = 0;
    if (gen_of[m] >= 0) {
      int img = local_image[comp][gen_comp[gen_of[m]]];
      if (img >= 0) e = groups[comp].act[0][2 * img];
    }
    q.q.mor[m] = base[C.dom(m)][C.cod(m)] + e;
  }
  for (const auto& [x, y, e] : triples) {
    int comp = comps.class_of[x];
    std::vector<Letter> w = invert_word(path[x]);
    for (int l : groups[comp].words[e]) {
      int m = rep_morphism[comp][l / 2];
      std::vector<Letter> gen = path[C.dom(m)];
      gen.push_back({m, false});
      for (const Letter& t : invert_word(path[C.cod(m)])) gen.push_back(t);
      if (l & 1) gen = invert_word(gen);
      w.insert(w.end(), gen.begin(), gen.end());
    }
    w.insert(w.end(), path[y].begin(), path[y].end());
    q.words.push_back(std::move(w));
  }
  result.groupoid = std::move(q);
  return result;
}

}  // namespace fibrifier
