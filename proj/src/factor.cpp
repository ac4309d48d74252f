#include "fibrifier/factor.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "fibrifier/adjoint.hpp"
#include "fibrifier/comma.hpp"
#include "fibrifier/errors.hpp"
#include "fibrifier/fibration.hpp"
#include "fibrifier/grothendieck.hpp"

namespace fibrifier {

namespace {

bool connected_nonempty(const CatPtr& c) {
  if (c->object_count() == 0) return false;
  return connected_components(c).discrete->object_count() == 1;
}

bool bijective(const Functor& h) {
  auto onto = [](const std::vector<int>& v, int n) {
    if (static_cast<int>(v.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int x : v) {
      if (hit[x]) return false;
      hit[x] = 1;
    }
    return true;
  };
  return onto(h.obj, h.target->object_count()) && onto(h.mor, h.target->morphism_count());
}

// A zigzag in C^op read in C: reversed, with the same inverse flags.
std::vector<Letter> reverse_word(std::vector<Letter> w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// Turns a factorization computed for opposite(f) into one of f.
FactorizationResult unop(FactorizationResult r, const Functor& f) {
  FactorizationResult out;
  out.kind = r.kind;
  out.side = r.side == Side::fib ? Side::opfib : Side::fib;
  out.mid = share(opposite(*r.mid));
  out.q = Functor{f.source, out.mid, std::move(r.q.obj), std::move(r.q.mor)};
  out.s = Functor{out.mid, f.target, std::move(r.s.obj), std::move(r.s.mor)};
  for (auto& w : r.words) out.words.push_back(reverse_word(std::move(w)));
  return out;
}

FactorizationResult from_fibrewise(FibrewiseResult w, FactorKind kind) {
  FactorizationResult r;
  r.kind = kind;
  r.side = Side::fib;
  r.mid = w.mid.total;
  r.q = std::move(w.q);
  r.s = std::move(w.s);
  r.words = std::move(w.words);
  return r;
}

Functor restrict_to_fibre(const FibreDecomposition& df, const FibreDecomposition& dg,
                          const Functor& p, int b) {
  const CatPtr& src = df.pf.fibre[b];
  Functor r{src, dg.pf.fibre[b], std::vector<int>(src->object_count()),
            std::vector<int>(src->morphism_count())};
  for (int x = 0; x < src->object_count(); ++x)
    r.obj[x] = dg.local_object[p.obj[df.fibre_objects[b][x]]];
  for (int k = 0; k < src->morphism_count(); ++k) {
    int m = dg.local_morphism[p.mor[df.fibre_morphisms[b][k]]];
    if (m < 0) throw Error("fibre_restriction: p does not preserve vertical morphisms");
    r.mor[k] = m;
  }
  return r;
}

bool fibrewise_opfibration(const FibBMorphism& m, bool discrete, bool groupoidal) {
  FibreDecomposition df = to_pseudofunctor(m.f);
  FibreDecomposition dg = to_pseudofunctor(m.g);
  for (int b = 0; b < m.f.target->object_count(); ++b) {
    Functor pb = restrict_to_fibre(df, dg, m.p, b);
    bool ok = discrete ? is_discrete_opfibration(pb)
                       : is_opfibration(pb, CriteriaSet{true, false, false}).verdict();
    if (ok && groupoidal) ok = has_groupoidal_fibres(pb);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_final(const Functor& f) {
  for (int b = 0; b < f.target->object_count(); ++b)
    if (!connected_nonempty(comma(point(f.target, b), f).cat)) return false;
  return true;
}

bool is_initial(const Functor& f) {
  for (int b = 0; b < f.target->object_count(); ++b)
    if (!connected_nonempty(comma(f, point(f.target, b)).cat)) return false;
  return true;
}

bool FactorizationResult::evidence_ok() const {
  return std::all_of(evidence.begin(), evidence.end(), [](const auto& e) { return e.second; });
}

FactorizationResult comprehensive_factorization(const Functor& f, Side side) {
  if (side == Side::opfib) {
    FactorizationResult r = unop(comprehensive_factorization(opposite(f), Side::fib), f);
    r.evidence["q initial"] = is_initial(r.q);
    r.evidence["s discrete opfibration"] = is_discrete_opfibration(r.s);
    r.evidence["s q = f"] = compose(r.s, r.q) == f;
    return r;
  }
  // Rf: B/f -> B is the free fibration on f; π0 of its fibres b/f gives the
  // discrete fibration, and q is the unit A -> B/f followed by the reflection.
  FreeAlgebra t = monad_object(MonadKind::R, f);
  Functor v = monad_unit(MonadKind::R, f, t);
  FibrewiseResult w = fibrewise_apply(t.carrier_map, Reflection::pi0);
  FactorizationResult r;
  r.kind = FactorKind::comprehensive;
  r.side = Side::fib;
  r.mid = w.mid.total;
  r.q = compose(w.q, v);
  r.s = w.s;
  r.evidence["q final"] = is_final(r.q);
  r.evidence["s discrete fibration"] = is_discrete_fibration(r.s);
  r.evidence["s q = f"] = compose(r.s, r.q) == f;
  return r;
}

FactorizationResult groupoid_fibre_factorization(const Functor& f, Side side, long cap) {
  FactorizationResult r;
  if (side == Side::opfib) {
    r = unop(groupoid_fibre_factorization(opposite(f), Side::fib, cap), f);
    r.evidence.clear();
    r.evidence["s opfibration"] = is_opfibration(r.s, CriteriaSet{true, false, false}).verdict();
  } else {
    r = from_fibrewise(fibrewise_apply(f, Reflection::groupoid, cap), FactorKind::groupoid);
    r.evidence["s fibration"] = is_fibration(r.s, CriteriaSet{true, false, false}).verdict();
  }
  r.evidence["s groupoidal fibres"] = has_groupoidal_fibres(r.s);
  r.evidence["s conservative"] = is_conservative(r.s);
  r.evidence["s q = f"] = compose(r.s, r.q) == f;
  return r;
}

std::vector<std::string> fibB_violations(const FibBMorphism& m) {
  std::vector<std::string> out;
  if (!(*m.f.target == *m.g.target)) out.push_back("f and g have different bases");
  if (!(*m.p.source == *m.f.source) || !(*m.p.target == *m.g.source))
    out.push_back("p does not go from the source of f to the source of g");
  if (!out.empty()) return out;
  if (!validate(m.p).ok()) out.push_back("p is not a functor");
  if (!extract_cleavage(m.f)) out.push_back("f is not a fibration");
  if (!extract_cleavage(m.g)) out.push_back("g is not a fibration");
  if (!out.empty()) return out;
  Functor gp{m.f.source, m.f.target, {}, {}};
  for (int a : m.p.obj) gp.obj.push_back(m.g.obj[a]);
  for (int x : m.p.mor) gp.mor.push_back(m.g.mor[x]);
  if (!(gp.obj == m.f.obj && gp.mor == m.f.mor)) {
    out.push_back("g p differs from f");
    return out;
  }
  if (!is_cartesian_functor(m)) out.push_back("p sends a chosen lift to a non-cartesian arrow");
  return out;
}

bool is_cartesian_functor(const FibBMorphism& m) {
  auto c = extract_cleavage(m.f);
  if (!c) return false;
  std::vector<char> cart = cartesian_mask(m.g);
  for (const auto& row : c->lift)
    for (int l : row)
      if (l >= 0 && !cart[m.p.mor[l]]) return false;
  return true;
}

Functor fibre_restriction(const FibBMorphism& m, int b) {
  return restrict_to_fibre(to_pseudofunctor(m.f), to_pseudofunctor(m.g), m.p, b);
}

bool is_fibrewise_opfibration(const FibBMorphism& m, bool discrete) {
  return fibrewise_opfibration(m, discrete, false);
}

namespace {

// A cleavage of f sent by p onto the given cleavage of g. Then p commutes
// strictly with reindexing, so reindexing preserves p-vertical maps and the
// fibrewise quotients descend. Exists because p is cartesian and each fibre
// restriction, being an opfibration, lifts vertical isos.
Cleavage cleavage_over(const FibBMorphism& m, const Cleavage& cg) {
  const FinCat& A = *m.f.source;
  const FinCat& B = *m.f.target;
  std::vector<char> cart = cartesian_mask(m.f);
  Cleavage c{m.f, std::vector<std::vector<int>>(A.object_count(), std::vector<int>(B.morphism_count(), -1))};
  for (int a = 0; a < A.object_count(); ++a)
    for (int beta = 0; beta < B.morphism_count(); ++beta) {
      if (B.cod(beta) != m.f.obj[a]) continue;
      int want = cg.lift[m.p.obj[a]][beta];
      if (B.is_identity(beta)) {
        c.lift[a][beta] = A.identity(a);
        continue;
      }
      for (int phi = 0; phi < A.morphism_count() && c.lift[a][beta] < 0; ++phi)
        if (cart[phi] && A.cod(phi) == a && m.f.mor[phi] == beta && m.p.mor[phi] == want) c.lift[a][beta] = phi;
      if (c.lift[a][beta] < 0) throw Error("factor_in_fibB: no lift of a chosen cartesian arrow of g");
    }
  return c;
}

}  // namespace

FactorizationResult factor_in_fibB(const FibBMorphism& m, FibBMode mode, long cap) {
  auto bad = fibB_violations(m);
  if (!bad.empty()) throw Error("factor_in_fibB: " + bad.front());
  if (!is_fibrewise_opfibration(m, false))
    throw NotFibrewiseOpfibration("factor_in_fibB: some fibre restriction is not an opfibration");

  FibreDecomposition dg = to_pseudofunctor(m.g);
  FibreDecomposition df = to_pseudofunctor(m.f, cleavage_over(m, dg.cleavage));
  bool groupoid = mode == FibBMode::coinverter;
  std::vector<Quotient> units;
  for (int b = 0; b < m.f.target->object_count(); ++b) {
    Functor pb = restrict_to_fibre(df, dg, m.p, b);
    FactorizationResult fb = groupoid ? groupoid_fibre_factorization(pb, Side::opfib, cap)
                                      : unop(from_fibrewise(fibrewise_apply(opposite(pb), Reflection::pi0),
                                                           FactorKind::comprehensive),
                                            pb);
    units.push_back(fb.quotient());
  }
  FibrewiseResult w = reassemble(m.f, df, std::move(units));

  FactorizationResult r;
  r.kind = groupoid ? FactorKind::groupoid : FactorKind::comprehensive;
  r.side = Side::opfib;
  r.mid = w.mid.total;
  r.q = w.q;
  r.words = w.words;
  auto s = factor_through(w.quotient(), m.p);
  if (!s) throw Error("factor_in_fibB: p does not factor through the fibrewise quotient");
  r.s = *s;
  r.over_base = w.mid.proj;

  FibBMorphism left{m.f, *r.over_base, r.q};
  FibBMorphism right{*r.over_base, m.g, r.s};
  r.evidence["g s = h"] = compose(m.g, r.s) == *r.over_base;
  r.evidence["h fibration"] = is_fibration(*r.over_base, CriteriaSet{true, false, false}).verdict();
  r.evidence["q cartesian"] = is_cartesian_functor(left);
  r.evidence["s cartesian"] = is_cartesian_functor(right);
  r.evidence["s q = p"] = compose(r.s, r.q) == m.p;
  if (groupoid)
    r.evidence["s fibrewise opfibration in groupoids"] = fibrewise_opfibration(right, false, true);
  else
    r.evidence["s fibrewise discrete opfibration"] = fibrewise_opfibration(right, true, false);
  return r;
}

bool matches_generic_quotient(const FactorizationResult& r, bool coinverter_mode, long cap) {
  TwoCellDiagram d = identee(compose(r.s, r.q));
  Quotient g = coinverter_mode ? coinverter(d, cap) : coidentifier(d, cap);
  auto h = factor_through(g, r.q);
  return h && bijective(*h);
}

std::optional<FactorizationIso> compare_factorizations(const FactorizationResult& a,
                                                       const FactorizationResult& b) {
  if (!(*a.q.source == *b.q.source) || !(*a.s.target == *b.s.target)) return std::nullopt;
  FunctorSearch opt;
  opt.object_allowed = [&](int y, int z) { return a.s.obj[y] == b.s.obj[z]; };
  opt.morphism_allowed = [&](int y, int z) { return a.s.mor[y] == b.s.mor[z]; };
  std::set<std::pair<int, int>> objs, mors;
  for (std::size_t x = 0; x < a.q.obj.size(); ++x) objs.insert({a.q.obj[x], b.q.obj[x]});
  for (std::size_t x = 0; x < a.q.mor.size(); ++x) mors.insert({a.q.mor[x], b.q.mor[x]});
  opt.forced_objects.assign(objs.begin(), objs.end());
  opt.forced_morphisms.assign(mors.begin(), mors.end());
  auto h = find_isomorphism(a.mid, b.mid, opt);
  if (!h) return std::nullopt;
  Functor back = invert(*h);
  return FactorizationIso{std::move(*h), std::move(back)};
}

}  // namespace fibrifier
