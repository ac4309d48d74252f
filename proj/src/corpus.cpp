#include "fibrifier/corpus.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fibrifier/adjoint.hpp"
#include "fibrifier/catalog.hpp"
#include "fibrifier/colimit.hpp"
#include "fibrifier/comma.hpp"
#include "fibrifier/errors.hpp"
#include "fibrifier/grothendieck.hpp"
#include "fibrifier/serialize.hpp"

namespace fibrifier {

namespace {

using Rng = std::mt19937_64;

// Plain modulo keeps the streams identical across standard libraries.
int pick(Rng& r, int n) { return n <= 1 ? 0 : static_cast<int>(r() % static_cast<unsigned>(n)); }
bool chance(Rng& r, int num, int den) { return pick(r, den) < num; }

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool fits(const FinCat& c, int max_objects, int max_morphisms) {
  return c.object_count() > 0 && c.object_count() <= max_objects &&
         c.morphism_count() <= max_morphisms;
}

bool bijective(const Functor& h) {
  std::vector<int> o = h.obj, m = h.mor;
  std::sort(o.begin(), o.end());
  std::sort(m.begin(), m.end());
  return std::adjacent_find(o.begin(), o.end()) == o.end() &&
         std::adjacent_find(m.begin(), m.end()) == m.end() &&
         static_cast<int>(o.size()) == h.target->object_count() &&
         static_cast<int>(m.size()) == h.target->morphism_count();
}

FinCat named(Rng& r) {
  switch (pick(r, 9)) {
    case 0: return catalog::terminal();
    case 1: return catalog::arrow();
    case 2: return catalog::free_iso();
    case 3: return catalog::square();
    case 4: return catalog::kronecker();
    case 5: return catalog::cyclic_group(2 + pick(r, 3));
    case 6: return catalog::idempotent();
    case 7: return catalog::chaotic(2);
    default: return catalog::discrete(2);
  }
}

FinCat random_preorder(Rng& r, int n) {
  std::vector<std::pair<int, int>> gens;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a < b ? chance(r, 1, 3) : (a > b && chance(r, 1, 12))) gens.push_back({a, b});
  return catalog::preorder(n, gens);
}

FinCat random_free(Rng& r, int n) {
  std::vector<std::pair<int, int>> edges;
  if (n < 2) return catalog::terminal();
  int count = 1 + pick(r, n);
  for (int i = 0; i < count; ++i) {
    int a = pick(r, n - 1);
    int b = a + 1 + pick(r, n - 1 - a);
    edges.push_back({a, b});
  }
  return catalog::free_category(n, edges);
}

FinCat random_monoid(Rng& r) {
  switch (pick(r, 3)) {
    case 0: return catalog::cyclic_group(2);
    case 1: return catalog::cyclic_group(3);
    default: return catalog::idempotent();
  }
}

FinCat category(Rng& r, int max_objects, int max_morphisms, bool allow_sum = true) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    FinCat c;
    int n = 1 + pick(r, std::min(max_objects, 5));
    switch (pick(r, allow_sum ? 5 : 4)) {
      case 0: c = random_preorder(r, n); break;
      case 1: c = catalog::product(random_preorder(r, 1 + pick(r, std::min(max_objects, 3))),
                                   random_monoid(r));
        break;
      case 2: c = random_free(r, std::min(n, 4)); break;
      case 3: c = named(r); break;
      default: {
        int half = std::max(1, max_objects / 2);
        int mhalf = std::max(1, max_morphisms / 2);
        FinCat a = category(r, half, mhalf, false);
        c = catalog::coproduct(a, category(r, half, mhalf, false));
      }
    }
    if (fits(c, max_objects, max_morphisms)) return c;
  }
  return catalog::terminal();
}

Functor random_functor(Rng& r, const CatPtr& a, const CatPtr& b) {
  FunctorSearch s;
  s.rng = &r;
  s.max_solutions = 1;
  s.max_steps = 20000;
  auto found = search_functors(a, b, s);
  if (!found.empty()) return found.front();
  return constant_functor(a, b, pick(r, b->object_count()));
}

// Sum of two functors with a common target.
Functor copair(const Functor& f, const Functor& g) {
  Functor h{share(catalog::coproduct(*f.source, *g.source)), f.target, f.obj, f.mor};
  h.obj.insert(h.obj.end(), g.obj.begin(), g.obj.end());
  h.mor.insert(h.mor.end(), g.mor.begin(), g.mor.end());
  return h;
}

CatPtr base_category(Rng& r, const GenConfig& cfg) {
  return share(category(r, cfg.base_size_bound, cfg.max_morphisms));
}

CatPtr fibre_category(Rng& r, const GenConfig& cfg) {
  return share(category(r, cfg.fibre_size_bound, cfg.max_morphisms));
}

Functor representable_sum(Rng& r, const CatPtr& base) {
  auto slice = [&](int b) { return comma(identity_functor(base), point(base, b)).left_proj; };
  Functor f = slice(pick(r, base->object_count()));
  if (chance(r, 1, 2)) f = copair(f, slice(pick(r, base->object_count())));
  return f;
}

// Grothendieck construction of a strict functor on a forest-shaped preorder:
// paths are unique, so any choice of functors on the edges is strict.
Functor forest_fibration(Rng& r, const GenConfig& cfg) {
  int n = 1 + pick(r, cfg.base_size_bound);
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    if (!chance(r, 3, 4)) continue;
    int p = pick(r, v);
    edges.push_back(chance(r, 1, 2) ? std::pair{p, v} : std::pair{v, p});
  }
  CatPtr base = share(catalog::preorder(n, edges));
  std::vector<CatPtr> fibres;
  for (int b = 0; b < n; ++b)
    fibres.push_back(share(category(r, cfg.fibre_size_bound, std::max(1, cfg.max_morphisms / n))));
  std::map<std::pair<int, int>, Functor> edge_functor;
  for (auto [a, b] : edges) edge_functor.emplace(std::pair{a, b}, random_functor(r, fibres[b], fibres[a]));

  std::vector<Functor> reindex;
  for (const Arrow& beta : base->arrows()) {
    // walk the unique directed path dom -> cod backwards from cod
    std::vector<int> prev(n, -1);
    std::deque<int> queue{beta.dom};
    prev[beta.dom] = beta.dom;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [a, b] : edges)
        if (a == v && prev[b] < 0) prev[b] = v, queue.push_back(b);
    }
    Functor f = identity_functor(fibres[beta.cod]);
    for (int v = beta.cod; v != beta.dom; v = prev[v]) f = compose(edge_functor.at({prev[v], v}), f);
    reindex.push_back(std::move(f));
  }
  return grothendieck_construction(strict_pseudofunctor(base, fibres, reindex)).proj;
}

std::pair<Functor, std::string> fibration_recipe(Rng& r, const GenConfig& cfg, int depth = 0) {
  switch (pick(r, depth == 0 ? 5 : 4)) {
    case 0: {
      CatPtr b = base_category(r, cfg);
      CatPtr x = fibre_category(r, cfg);
      return {catalog::projection(share(catalog::product(*b, *x)), b, x, true), "product"};
    }
    case 1: {
      CatPtr b = base_category(r, cfg);
      CatPtr a = fibre_category(r, cfg);
      return {monad_object(MonadKind::R, random_functor(r, a, b)).carrier_map, "free R-algebra"};
    }
    case 2: return {representable_sum(r, base_category(r, cfg)), "sum of representables"};
    case 3: return {forest_fibration(r, cfg), "strict functor on a forest"};
    default: {
      auto [f, inner] = fibration_recipe(r, cfg, depth + 1);
      CatPtr b2 = base_category(r, cfg);
      Functor g = random_functor(r, b2, f.target);
      return {pullback_category(f, g).right, "pullback of " + inner};
    }
  }
}

GeneratedFibration fibration(Rng& r, const GenConfig& cfg) {
  for (int attempt = 0; attempt < 30; ++attempt) {
    auto [f, recipe] = fibration_recipe(r, cfg);
    if (!fits(*f.source, cfg.max_objects, cfg.max_morphisms)) continue;
    auto c = extract_cleavage(f);
    return {f, c ? *c : Cleavage{f, {}}, recipe};
  }
  CatPtr one = share(catalog::terminal());
  Functor id = identity_functor(one);
  return {id, *extract_cleavage(id), "terminal"};
}

// An opfibration: the opposite of a fibration, read between the opposite
// categories.
Functor opfibration(Rng& r, const GenConfig& cfg) { return opposite(fibration(r, cfg).functor); }

}  // namespace

void check_config(const GenConfig& cfg) {
  if (cfg.max_objects <= 0 || cfg.max_morphisms <= 0 || cfg.fibre_size_bound <= 0 ||
      cfg.base_size_bound <= 0 || cfg.instance_count < 0)
    throw Error("generator bounds must be positive");
}

GenConfig instance_config(const GenConfig& cfg, int i) {
  GenConfig c = cfg;
  c.seed = splitmix(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(i));
  return c;
}

FinCat gen_category(const GenConfig& cfg) {
  check_config(cfg);
  Rng r(cfg.seed);
  return category(r, cfg.max_objects, cfg.max_morphisms);
}

Functor gen_functor(const GenConfig& cfg) {
  check_config(cfg);
  Rng r(cfg.seed);
  int half = std::max(1, cfg.max_objects / 2);
  CatPtr a = share(category(r, half, cfg.max_morphisms));
  CatPtr b = share(category(r, half, cfg.max_morphisms));
  return random_functor(r, a, b);
}

GeneratedFibration gen_fibration(const GenConfig& cfg) {
  check_config(cfg);
  Rng r(cfg.seed);
  return fibration(r, cfg);
}

Functor gen_isofibration(const GenConfig& cfg) {
  check_config(cfg);
  Rng r(cfg.seed);
  switch (pick(r, 4)) {
    case 0: return fibration(r, cfg).functor;
    case 1: return opfibration(r, cfg);
    case 2: {
      // free I-algebras are isofibrations
      CatPtr b = base_category(r, cfg);
      CatPtr a = fibre_category(r, cfg);
      Functor f = monad_object(MonadKind::I, random_functor(r, a, b)).carrier_map;
      if (fits(*f.source, cfg.max_objects, cfg.max_morphisms)) return f;
      return fibration(r, cfg).functor;
    }
    default: {
      int half = std::max(1, cfg.max_objects / 2);
      for (int attempt = 0; attempt < 10; ++attempt) {
        CatPtr a = share(category(r, half, cfg.max_morphisms));
        CatPtr b = share(category(r, half, cfg.max_morphisms));
        Functor f = random_functor(r, a, b);
        if (is_isofibration(f)) return f;
      }
      return opfibration(r, cfg);
    }
  }
}

FibBMorphism gen_fibB_morphism(const GenConfig& cfg) {
  check_config(cfg);
  Rng r(cfg.seed);
  auto identity_on = [&](const Functor& f) { return FibBMorphism{f, f, identity_functor(f.source)}; };
  GenConfig small = cfg;
  small.base_size_bound = std::min(cfg.base_size_bound, 2);
  small.fibre_size_bound = std::min(cfg.fibre_size_bound, 2);
  for (int attempt = 0; attempt < 20; ++attempt) {
    FibBMorphism m;
    switch (pick(r, 4)) {
      case 0: m = identity_on(fibration(r, cfg).functor); break;
      case 1:
      case 2: {
        // B × X -> B × Y over B, with fibres an (op)fibration h: X -> Y
        CatPtr b = base_category(r, small);
        Functor h = pick(r, 2) == 0 ? opfibration(r, small)
                                    : opposite(representable_sum(r, share(opposite(*base_category(r, small)))));
        CatPtr bx = share(catalog::product(*b, *h.source));
        CatPtr by = share(catalog::product(*b, *h.target));
        Functor p{bx, by, std::vector<int>(bx->object_count()),
                  std::vector<int>(bx->morphism_count())};
        int nx = h.source->object_count(), ny = h.target->object_count();
        int kx = h.source->morphism_count(), ky = h.target->morphism_count();
        for (int o = 0; o < bx->object_count(); ++o) p.obj[o] = (o / nx) * ny + h.obj[o % nx];
        for (int k = 0; k < bx->morphism_count(); ++k) p.mor[k] = (k / kx) * ky + h.mor[k % kx];
        m = {catalog::projection(bx, b, h.source, true), catalog::projection(by, b, h.target, true), p};
        break;
      }
      default: {
        // codomain of the vertical arrows of a fibration g
        Functor g = fibration(r, small).functor;
        TwoCellDiagram d = identee(g);
        m = {compose(g, d.d1), g, d.d1};
      }
    }
    if (!fits(*m.f.source, cfg.max_objects, cfg.max_morphisms)) continue;
    if (fibB_violations(m).empty()) return m;
  }
  CatPtr one = share(catalog::terminal());
  return identity_on(identity_functor(one));
}

std::vector<std::pair<std::string, Functor>> curated_functors() {
  CatPtr one = share(catalog::terminal());
  CatPtr two = share(catalog::arrow());
  CatPtr iso = share(catalog::free_iso());
  CatPtr sq = share(catalog::square());
  return {{"1", identity_functor(one)},
          {"2", identity_functor(two)},
          {"I", identity_functor(iso)},
          {"square", identity_functor(sq)},
          {"1 -> I", point(iso, 0)},
          {"2 -> I", catalog::thin_functor(two, iso, {0, 1})}};
}

Functor shrink(const Functor& f, const std::function<bool(const Functor&)>& fails) {
  auto safe = [&](const Functor& g) {
    try {
      return fails(g);
    } catch (const Error&) {
      return false;
    }
  };
  auto restrict = [](const Functor& g, const Subcategory& s) {
    Functor h{s.cat, g.target, {}, {}};
    for (int x : s.inclusion.obj) h.obj.push_back(g.obj[x]);
    for (int m : s.inclusion.mor) h.mor.push_back(g.mor[m]);
    return h;
  };
  Functor cur = f;
  bool progress = true;
  while (progress) {
    progress = false;
    const FinCat& A = *cur.source;
    for (int a = 0; a < A.object_count() && !progress && A.object_count() > 1; ++a) {
      std::vector<int> keep;
      for (int x = 0; x < A.object_count(); ++x)
        if (x != a) keep.push_back(x);
      Functor g = restrict(cur, full_subcategory(cur.source, keep));
      if (safe(g)) cur = g, progress = true;
    }
    for (int m = 0; m < A.morphism_count() && !progress; ++m) {
      if (A.is_identity(m)) continue;
      std::vector<char> keep(A.morphism_count(), 1);
      keep[m] = 0;
      if (!closed_under_composition(A, keep)) continue;
      Functor g = restrict(cur, subcategory(cur.source, keep));
      if (safe(g)) cur = g, progress = true;
    }
    const FinCat& B = *cur.target;
    for (int b = 0; b < B.object_count() && !progress && B.object_count() > 1; ++b) {
      if (std::find(cur.obj.begin(), cur.obj.end(), b) != cur.obj.end()) continue;
      std::vector<int> keep;
      for (int x = 0; x < B.object_count(); ++x)
        if (x != b) keep.push_back(x);
      Subcategory s = full_subcategory(cur.target, keep);
      std::vector<int> obj_back(B.object_count(), -1), mor_back(B.morphism_count(), -1);
      for (int i = 0; i < static_cast<int>(s.inclusion.obj.size()); ++i) obj_back[s.inclusion.obj[i]] = i;
      for (int i = 0; i < static_cast<int>(s.inclusion.mor.size()); ++i) mor_back[s.inclusion.mor[i]] = i;
      Functor g{cur.source, s.cat, {}, {}};
      for (int x : cur.obj) g.obj.push_back(obj_back[x]);
      for (int x : cur.mor) g.mor.push_back(mor_back[x]);
      if (safe(g)) cur = g, progress = true;
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Suites

bool InstanceReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == Status::fail; });
}

bool InstanceReport::conclusive() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == Status::inconclusive; });
}

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(instances.begin(), instances.end(),
                                        [](const InstanceReport& i) { return !i.passed(); }));
}

int SuiteReport::inconclusive() const {
  return static_cast<int>(std::count_if(instances.begin(), instances.end(), [](const InstanceReport& i) {
    return i.passed() && !i.conclusive();
  }));
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json out = {{"suite", suite},
                        {"seed", config.seed},
                        {"count", config.instance_count},
                        {"passed", passed()},
                        {"failures", failures()},
                        {"inconclusive", inconclusive()}};
  nlohmann::json list = nlohmann::json::array();
  for (const InstanceReport& i : instances) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : i.checks) {
      const char* s = c.status == Status::pass ? "pass" : c.status == Status::fail ? "fail" : "inconclusive";
      nlohmann::json jc = {{"name", c.name}, {"status", s}};
      if (!c.note.empty()) jc["note"] = c.note;
      checks.push_back(jc);
    }
    list.push_back({{"index", i.index},
                    {"label", i.label},
                    {"passed", i.passed()},
                    {"checks", checks},
                    {"witness", i.witness},
                    {"shrunk", i.shrunk}});
  }
  out["instances"] = list;
  return out;
}

namespace {

using Checks = std::vector<CheckResult>;

// Runs a check; CapExceeded makes it inconclusive and any other error a failure.
void run_check(Checks& out, const std::string& name, const std::function<bool()>& body,
               const std::string& note = "") {
  try {
    out.push_back({name, body() ? Status::pass : Status::fail, note});
  } catch (const CapExceeded& e) {
    out.push_back({name, Status::inconclusive, e.what()});
  } catch (const Error& e) {
    out.push_back({name, Status::fail, e.what()});
  }
}

bool any_failed(const Checks& c) {
  return std::any_of(c.begin(), c.end(), [](const CheckResult& r) { return r.status == Status::fail; });
}

constexpr CriteriaSet kDirect{true, false, false};

Checks chevalley_checks(const Functor& f) {
  Checks out;
  run_check(out, "fibration criteria agree", [&] { return is_fibration(f).agreement(); });
  run_check(out, "opfibration criteria agree", [&] { return is_opfibration(f).agreement(); });
  return out;
}

Checks comprehensive_checks(const Functor& f) {
  Checks out;
  for (Side side : {Side::fib, Side::opfib}) {
    std::string tag = side == Side::fib ? " (fib)" : " (opfib)";
    FactorizationResult c = comprehensive_factorization(f, side);
    for (const auto& [name, ok] : c.evidence) out.push_back({name + tag, ok ? Status::pass : Status::fail, ""});
    run_check(out, "idempotent" + tag,
              [&] { return bijective(comprehensive_factorization(c.s, side).q); });
    bool premise = side == Side::fib ? is_fibration(f, kDirect).verdict()
                                     : is_opfibration(f, kDirect).verdict();
    if (!premise) continue;
    run_check(out, "coidentifier of the identee" + tag, [&] {
      if (!matches_generic_quotient(c, false)) return false;
      Quotient g = coidentifier(identee(f));
      auto s = factor_through(g, f);
      if (!s) return false;
      FactorizationResult other;
      other.q = g.q;
      other.mid = g.cat;
      other.s = *s;
      return compare_factorizations(c, other).has_value();
    });
  }
  return out;
}

Checks groupoid_checks(const Functor& f, Side side, long cap) {
  Checks out;
  std::string tag = side == Side::fib ? " (fib)" : " (opfib)";
  FactorizationResult g;
  try {
    g = groupoid_fibre_factorization(f, side, cap);
  } catch (const CapExceeded& e) {
    out.push_back({"fibre reflections" + tag, Status::inconclusive, e.what()});
    return out;
  }
  for (const auto& [name, ok] : g.evidence) out.push_back({name + tag, ok ? Status::pass : Status::fail, ""});
  run_check(out, "single coinverter" + tag,
            [&] { return bijective(groupoid_fibre_factorization(g.s, side, cap).q); });
  run_check(out, "coinverter of the identee" + tag, [&] { return matches_generic_quotient(g, true, cap); });
  return out;
}

bool coinverters_agree(const Functor& f, long cap) {
  Quotient by_identee = coinverter(identee(f), cap);
  Quotient by_invertee = coinverter(invertee(f), cap);
  auto h = factor_through(by_identee, by_invertee.q);
  return h && bijective(*h);
}

Checks isofibration_checks(const Functor& f, long cap) {
  Checks out;
  run_check(out, "isofibration", [&] { return is_isofibration(f); });
  run_check(out, "conservative iff groupoidal fibres",
            [&] { return is_conservative(f) == has_groupoidal_fibres(f); });
  run_check(out, "coinverter of identee = coinverter of invertee", [&] { return coinverters_agree(f, cap); });
  return out;
}

// T preserves identees and coidentifiers / coinverters of identees, tested on
// p: (A, g p) -> (C, g).
void dagger_checks(Checks& out, MonadKind kind, const Functor& p, const Functor& g, long cap) {
  std::string tag = kind == MonadKind::R ? " (R)" : " (L)";
  Functor f = compose(g, p);
  FreeAlgebra tf = monad_object(kind, f);
  FreeAlgebra tg = monad_object(kind, g);
  Functor tp = monad_map(kind, p, tf, tg);
  TwoCellDiagram k = identee(p);
  TwoCellDiagram tk = identee(tp);
  run_check(out, "preserves identees" + tag, [&] {
    Functor fk = compose(f, k.d0);
    FreeAlgebra tfk = monad_object(kind, fk);
    Functor t0 = monad_map(kind, k.d0, tfk, tf);
    Functor t1 = monad_map(kind, k.d1, tfk, tf);
    FunctorSearch opt;
    opt.object_allowed = [&](int x, int y) { return t0.obj[x] == tk.d0.obj[y] && t1.obj[x] == tk.d1.obj[y]; };
    opt.morphism_allowed = [&](int x, int y) { return t0.mor[x] == tk.d0.mor[y] && t1.mor[x] == tk.d1.mor[y]; };
    return find_isomorphism(tfk.comma.cat, tk.apex, opt).has_value();
  });
  for (bool invert : {false, true}) {
    std::string what = invert ? "preserves coinverters of identees" : "preserves coidentifiers of identees";
    run_check(out, what + tag, [&] {
      Quotient q = invert ? coinverter(k, cap) : coidentifier(k, cap);
      auto s = factor_through(q, f);
      if (!s) return false;
      FreeAlgebra ts = monad_object(kind, *s);
      Functor tq = monad_map(kind, q.q, tf, ts);
      Quotient tq_generic = invert ? coinverter(tk, cap) : coidentifier(tk, cap);
      auto h = factor_through(tq_generic, tq);
      return h && bijective(*h);
    });
  }
}

GenConfig smaller(const GenConfig& cfg, int objects, int morphisms) {
  GenConfig c = cfg;
  c.max_objects = std::min(cfg.max_objects, objects);
  c.max_morphisms = std::min(cfg.max_morphisms, morphisms);
  c.base_size_bound = std::min(cfg.base_size_bound, 3);
  c.fibre_size_bound = std::min(cfg.fibre_size_bound, 2);
  return c;
}

constexpr long kSuiteCap = 2000;

struct Instance {
  std::string label;
  Checks checks;
  std::optional<Functor> functor;                         // for witnesses and shrinking
  std::function<Checks(const Functor&)> property;         // re-run while shrinking
  nlohmann::json witness;                                 // when not a functor
};

Instance chevalley_instance(const GenConfig& c, int i) {
  auto curated = curated_functors();
  Instance in;
  Functor f;
  bool expect_fib = false, expect_opfib = false;
  switch (i % 5) {
    case 0: {
      GeneratedFibration g = gen_fibration(c);
      f = g.functor, in.label = "fibration: " + g.recipe, expect_fib = true;
      break;
    }
    case 2: {
      GeneratedFibration g = gen_fibration(c);
      f = opposite(g.functor), in.label = "opfibration: opposite of " + g.recipe, expect_opfib = true;
      break;
    }
    case 4: {
      auto& [name, cf] = curated[(i / 5) % curated.size()];
      f = cf, in.label = "curated: " + name;
      break;
    }
    default: f = gen_functor(c), in.label = "functor";
  }
  in.property = chevalley_checks;
  in.checks = chevalley_checks(f);
  if (expect_fib) run_check(in.checks, "generated fibration recognized", [&] { return is_fibration(f).verdict(); });
  if (expect_opfib)
    run_check(in.checks, "generated opfibration recognized", [&] { return is_opfibration(f).verdict(); });
  in.functor = f;
  return in;
}

Instance example_instance() {
  CatPtr iso = share(catalog::free_iso());
  Functor f = point(iso, 0);
  Instance in;
  in.label = "f: 1 -> I";
  in.functor = f;
  FibReport op = is_opfibration(f);
  Checks& c = in.checks;
  c.push_back({"opfibration (direct) = false", op.direct == false ? Status::pass : Status::fail, ""});
  c.push_back({"opfibration (chevalley) = false", op.chevalley == false ? Status::pass : Status::fail, ""});
  c.push_back({"opfibration (algebra) = false", op.algebra == false ? Status::pass : Status::fail, ""});
  run_check(c, "street opfibration = true", [&] { return is_street_opfibration(f); });
  auto adj = find_left_adjoint(f, false);
  run_check(c, "adjunction found", [&] { return adj.has_value(); });
  if (adj) {
    run_check(c, "counit is an identity", [&] { return is_identity(adj->counit); });
    run_check(c, "unit is invertible", [&] { return is_invertible(adj->unit); });
    run_check(c, "unit is not an identity", [&] { return !is_identity(adj->unit); });
  }
  run_check(c, "no adjunction with identity unit", [&] { return !find_left_adjoint(f, true).has_value(); });
  return in;
}

Instance comprehensive_instance(const GenConfig& c, int i) {
  Instance in;
  Functor f;
  auto curated = curated_functors();
  switch (i % 3) {
    case 0: {
      GeneratedFibration g = gen_fibration(c);
      f = g.functor, in.label = "fibration: " + g.recipe;
      break;
    }
    case 1: f = gen_functor(c), in.label = "functor"; break;
    default: {
      auto& [name, cf] = curated[(i / 3) % curated.size()];
      f = cf, in.label = "curated: " + name;
    }
  }
  in.property = comprehensive_checks;
  in.checks = comprehensive_checks(f);
  in.functor = f;
  return in;
}

// Loop-free fibres: thin, with a forest as Hasse diagram up to isomorphism.
// Leaves of such a diagram are beat points, so each fibre is contractible and
// its groupoid reflection is finite (chaotic on components).
bool loop_free_fibres(const Functor& f) {
  const FinCat& A = *f.source;
  const int n = A.object_count();
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int m = 0; m < A.morphism_count(); ++m) {
    if (!f.target->is_identity(f.mor[m])) continue;
    if (le[A.dom(m)][A.cod(m)]) return false;
    le[A.dom(m)][A.cod(m)] = 1;
  }
  // iso classes, then covering relations between them
  std::vector<int> cls(n, -1);
  int classes = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    for (int y = x; y < n; ++y)
      if (le[x][y] && le[y][x]) cls[y] = classes;
    ++classes;
  }
  std::set<std::pair<int, int>> covers;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!le[x][y] || cls[x] == cls[y]) continue;
      bool between = false;
      for (int z = 0; z < n && !between; ++z)
        between = le[x][z] && le[z][y] && cls[z] != cls[x] && cls[z] != cls[y];
      if (!between) covers.insert({cls[x], cls[y]});
    }
  // forest test by union-find
  std::vector<int> parent(classes);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (auto [a, b] : covers) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

Instance groupoid_instance(const GenConfig& c, int i) {
  Instance in;
  GeneratedFibration g = gen_fibration(c);
  Side side = i % 2 == 0 ? Side::fib : Side::opfib;
  Functor f = side == Side::fib ? g.functor : opposite(g.functor);
  bool guaranteed = loop_free_fibres(f);
  in.label = (side == Side::fib ? "fibration: " : "opfibration: opposite of ") + g.recipe +
             (guaranteed ? " [loop-free fibres]" : "");
  in.property = [side](const Functor& h) { return groupoid_checks(h, side, kSuiteCap); };
  in.checks = in.property(f);
  if (guaranteed)
    for (CheckResult& r : in.checks)
      if (r.status == Status::inconclusive) r.status = Status::fail;
  in.functor = f;
  return in;
}

Instance isofibration_instance(const GenConfig& c, int i) {
  Instance in;
  if (i == 0) {
    // off isofibrations the second clause fails
    CatPtr two = share(catalog::arrow());
    Functor f = catalog::thin_functor(two, share(catalog::free_iso()), {0, 1});
    in.label = "curated: 2 -> I";
    in.functor = f;
    run_check(in.checks, "not an isofibration", [&] { return !is_isofibration(f); });
    run_check(in.checks, "coinverters of identee and invertee differ",
              [&] { return !coinverters_agree(f, kSuiteCap); });
    return in;
  }
  Functor f = gen_isofibration(c);
  in.label = "isofibration";
  in.property = [](const Functor& h) { return isofibration_checks(h, kSuiteCap); };
  in.checks = in.property(f);
  in.functor = f;
  return in;
}

Instance structural_instance(const GenConfig& cfg) {
  Instance in;
  in.label = "structural";
  Rng r(cfg.seed);
  GenConfig c = smaller(cfg, 4, 16);
  auto small_cat = [&] { return share(category(r, 3, 10)); };
  Checks& out = in.checks;
  nlohmann::json witness;

  GenConfig fc = c;
  fc.seed = splitmix(cfg.seed);
  Functor fib = gen_fibration(fc).functor;
  CatPtr b2 = small_cat();
  Functor g = random_functor(r, b2, fib.target);
  witness["pullback"] = {{"fibration", to_json(fib)}, {"along", to_json(g)}};
  run_check(out, "pullbacks of fibrations are fibrations",
            [&] { return is_fibration(pullback_category(fib, g).right, kDirect).verdict(); });

  CatPtr shared = small_cat();
  Functor cf = random_functor(r, small_cat(), shared);
  Functor cg = random_functor(r, small_cat(), shared);
  witness["comma"] = {{"f", to_json(cf)}, {"g", to_json(cg)}};
  run_check(out, "comma projections are a fibration and an opfibration", [&] {
    CommaCat k = comma(cf, cg);
    return is_fibration(k.left_proj, kDirect).verdict() && is_opfibration(k.right_proj, kDirect).verdict();
  });

  Functor sf = random_functor(r, small_cat(), small_cat());
  bool street = is_street_fibration(sf);
  if (!street) sf = fib;
  witness["street"] = to_json(sf);
  run_check(out, "I of a Street fibration is a fibration",
            [&] { return is_fibration(monad_object(MonadKind::I, sf).carrier_map, kDirect).verdict(); },
            street ? "random Street fibration" : "generated fibration");

  CatPtr base = small_cat();
  CatPtr mid = small_cat();
  Functor tg = random_functor(r, mid, base);
  Functor tp = random_functor(r, small_cat(), mid);
  witness["dagger"] = {{"p", to_json(tp)}, {"g", to_json(tg)}};
  dagger_checks(out, MonadKind::R, tp, tg, kSuiteCap);
  dagger_checks(out, MonadKind::L, tp, tg, kSuiteCap);
  in.witness = witness;
  return in;
}

Instance fibB_instance(const GenConfig& cfg) {
  Instance in;
  GenConfig c = smaller(cfg, 6, 30);
  FibBMorphism m = gen_fibB_morphism(c);
  in.label = "morphism of fibrations";
  in.witness = to_json(m);
  Checks& out = in.checks;
  run_check(out, "valid morphism of fibrations", [&] { return fibB_violations(m).empty(); });
  bool opfib = is_opfibration(m.p, kDirect).verdict();
  for (FibBMode mode : {FibBMode::coidentifier, FibBMode::coinverter}) {
    bool inv = mode == FibBMode::coinverter;
    std::string tag = inv ? " (coinverter)" : " (coidentifier)";
    std::optional<FactorizationResult> r;
    try {
      r = factor_in_fibB(m, mode, kSuiteCap);
    } catch (const CapExceeded& e) {
      out.push_back({"factorization" + tag, Status::inconclusive, e.what()});
      continue;
    } catch (const Error& e) {
      out.push_back({"factorization" + tag, Status::fail, e.what()});
      continue;
    }
    for (const auto& [name, ok] : r->evidence) out.push_back({name + tag, ok ? Status::pass : Status::fail, ""});
    run_check(out, "agrees with the quotient in Cat" + tag, [&] { return matches_generic_quotient(*r, inv, kSuiteCap); });
    if (opfib) {
      run_check(out, "agrees with the Cat factorization of p" + tag, [&] {
        FactorizationResult cat = inv ? groupoid_fibre_factorization(m.p, Side::opfib, kSuiteCap)
                                      : comprehensive_factorization(m.p, Side::opfib);
        return compare_factorizations(*r, cat).has_value();
      });
    }
  }
  return in;
}

Instance honesty_instance() {
  Instance in;
  in.label = "engine";
  CatPtr one = share(catalog::terminal());
  CatPtr two = share(catalog::arrow());
  int u = two->hom(0, 1).front();
  Functor a = point(two, 0), b = point(two, 1);
  TwoCellDiagram d{one, a, b, NatTrans{a, b, {u}}};
  in.witness = to_json(d);
  try {
    Quotient q = coidentifier(d, kSuiteCap);
    in.checks.push_back({"coidentifier of the endpoint identification on 2 exceeds the cap", Status::fail,
                         "the quotient is finite: " + std::to_string(q.cat->object_count()) + " object(s), " +
                             std::to_string(q.cat->morphism_count()) + " morphism(s)"});
  } catch (const CapExceeded&) {
    in.checks.push_back({"coidentifier of the endpoint identification on 2 exceeds the cap", Status::pass, ""});
  }
  run_check(in.checks, "groupoid reflection of 2 is I", [&] {
    GroupoidReflection g = groupoid_reflection(two, kSuiteCap);
    return g.groupoid && *g.groupoid->cat == catalog::free_iso();
  });
  run_check(in.checks, "identifying one of two parallel arrows exceeds the cap", [&] {
    try {
      identify_with_identities(share(catalog::kronecker()), {1}, kSuiteCap);
      return false;
    } catch (const CapExceeded&) {
      return true;
    }
  });
  return in;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"chevalley-agreement", "point-into-iso",       "comprehensive",        "groupoid-fibres",
          "isofibration",        "structural-lemmas", "fibB-factorization",   "engine-honesty"};
}

SuiteReport run_suite(const GenConfig& cfg, const std::string& suite) {
  check_config(cfg);
  auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw Error("unknown suite: " + suite);
  SuiteReport report;
  report.suite = suite;
  report.config = cfg;
  bool single = suite == "point-into-iso" || suite == "engine-honesty";
  int count = single ? std::min(cfg.instance_count, 1) : cfg.instance_count;
  for (int i = 0; i < count; ++i) {
    GenConfig c = instance_config(cfg, i);
    Instance in;
    try {
      if (suite == "chevalley-agreement") in = chevalley_instance(c, i);
      else if (suite == "point-into-iso") in = example_instance();
      else if (suite == "comprehensive") in = comprehensive_instance(c, i);
      else if (suite == "groupoid-fibres") in = groupoid_instance(c, i);
      else if (suite == "isofibration") in = isofibration_instance(c, i);
      else if (suite == "structural-lemmas") in = structural_instance(c);
      else if (suite == "fibB-factorization") in = fibB_instance(c);
      else in = honesty_instance();
    } catch (const Error& e) {
      in.label = "generation";
      in.checks.push_back({"instance ran", Status::fail, e.what()});
    }
    InstanceReport rep;
    rep.index = i;
    rep.label = in.label;
    rep.checks = std::move(in.checks);
    if (!rep.passed()) {
      rep.witness = in.functor ? to_json(*in.functor) : in.witness;
      if (in.functor && in.property) {
        Functor small = shrink(*in.functor, [&](const Functor& g) { return any_failed(in.property(g)); });
        rep.shrunk = to_json(small);
      }
    }
    report.instances.push_back(std::move(rep));
  }
  return report;
}

}  // namespace fibrifier
