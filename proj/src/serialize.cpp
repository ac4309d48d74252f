#include "fibrifier/serialize.hpp"

#include <algorithm>
#include <utility>

#include "fibrifier/errors.hpp"

namespace fibrifier {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::vector<int> int_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<int> tuple(const Json& j, const std::string& path, std::size_t n) {
  std::vector<int> v = int_array(j, path);
  if (v.size() != n) fail(path, "expected " + std::to_string(n) + " integers");
  return v;
}

void check_range(const std::vector<int>& v, int bound, const std::string& path) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < 0 || v[i] >= bound) fail(path + "/" + std::to_string(i), "index out of range");
}

FinCat read_cat(const Json& j, const std::string& path) {
  int n = as_int(field(j, path, "objects"), path + "/objects");
  if (n < 0) fail(path + "/objects", "negative object count");
  const Json& ms = field(j, path, "morphisms");
  if (!ms.is_array()) fail(path + "/morphisms", "expected an array");
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto t = tuple(ms[i], path + "/morphisms/" + std::to_string(i), 2);
    arrows.push_back({t[0], t[1]});
  }
  std::vector<int> ids = int_array(field(j, path, "identities"), path + "/identities");
  const Json& cs = field(j, path, "compose");
  if (!cs.is_array()) fail(path + "/compose", "expected an array");
  std::vector<ComposeEntry> entries;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto t = tuple(cs[i], path + "/compose/" + std::to_string(i), 3);
    entries.push_back({t[0], t[1], t[2]});
  }
  try {
    return FinCat(n, std::move(arrows), std::move(ids), entries);
  } catch (const IndexOutOfRange& e) {
    fail(path, e.what());
  }
}

Functor read_functor(const Json& j, const std::string& path, CatPtr source, CatPtr target) {
  Functor f{std::move(source), std::move(target),
            int_array(field(j, path, "obj"), path + "/obj"),
            int_array(field(j, path, "mor"), path + "/mor")};
  if (static_cast<int>(f.obj.size()) != f.source->object_count())
    fail(path + "/obj", "expected one entry per source object");
  if (static_cast<int>(f.mor.size()) != f.source->morphism_count())
    fail(path + "/mor", "expected one entry per source morphism");
  check_range(f.obj, f.target->object_count(), path + "/obj");
  check_range(f.mor, f.target->morphism_count(), path + "/mor");
  return f;
}

Functor read_functor(const Json& j, const std::string& path) {
  CatPtr s = share(read_cat(field(j, path, "source"), path + "/source"));
  CatPtr t = share(read_cat(field(j, path, "target"), path + "/target"));
  return read_functor(j, path, s, t);
}

NatTrans read_nat(const Json& j, const std::string& path) {
  NatTrans t{read_functor(field(j, path, "from"), path + "/from"),
             read_functor(field(j, path, "to"), path + "/to"),
             int_array(field(j, path, "component"), path + "/component")};
  if (static_cast<int>(t.component.size()) != t.from.source->object_count())
    fail(path + "/component", "expected one entry per source object");
  check_range(t.component, t.from.target->morphism_count(), path + "/component");
  return t;
}

Json words_json(const std::vector<std::vector<Letter>>& words) {
  Json out = Json::array();
  for (const auto& w : words) {
    Json jw = Json::array();
    for (const Letter& l : w) jw.push_back({l.morphism, l.inverse});
    out.push_back(jw);
  }
  return out;
}

std::vector<std::vector<Letter>> read_words(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<std::vector<Letter>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    if (!j[i].is_array()) fail(p, "expected an array");
    std::vector<Letter> w;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      std::string pk = p + "/" + std::to_string(k);
      const Json& l = j[i][k];
      if (!l.is_array() || l.size() != 2) fail(pk, "expected [morphism, inverse]");
      w.push_back({as_int(l[0], pk + "/0"), as_bool(l[1], pk + "/1")});
    }
    out.push_back(std::move(w));
  }
  return out;
}

Json functor_body(const Functor& f) { return {{"obj", f.obj}, {"mor", f.mor}}; }

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1 + std::count(text.begin(), text.begin() + pos, '\n');
    std::size_t nl = text.substr(0, pos).rfind('\n');
    std::size_t column = nl == std::string_view::npos ? pos + 1 : pos - nl;
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + " (byte " + std::to_string(e.byte) + ")");
  }
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

Json to_json(const FinCat& c) {
  Json ms = Json::array();
  for (const Arrow& a : c.arrows()) ms.push_back({a.dom, a.cod});
  std::vector<ComposeEntry> entries = c.compose_entries();
  std::sort(entries.begin(), entries.end());
  Json cs = Json::array();
  for (const ComposeEntry& e : entries) cs.push_back({e.g, e.f, e.gf});
  return {{"objects", c.object_count()},
          {"morphisms", ms},
          {"identities", c.identities()},
          {"compose", cs}};
}

Json to_json(const Functor& f) {
  Json j = functor_body(f);
  j["source"] = to_json(*f.source);
  j["target"] = to_json(*f.target);
  return j;
}

Json to_json(const NatTrans& t) {
  return {{"from", to_json(t.from)}, {"to", to_json(t.to)}, {"component", t.component}};
}

Json to_json(const TwoCellDiagram& d) {
  return {{"apex", to_json(*d.apex)},
          {"d0", to_json(d.d0)},
          {"d1", to_json(d.d1)},
          {"cell", to_json(d.cell)}};
}

Json to_json(const PresentedCategory& p) {
  Json gens = Json::array();
  for (const Arrow& a : p.generators) gens.push_back({a.dom, a.cod});
  Json rels = Json::array();
  for (const Relation& r : p.relations)
    rels.push_back({{"source", r.source}, {"lhs", r.lhs}, {"rhs", r.rhs}});
  return {{"objects", p.object_count},
          {"generators", gens},
          {"relations", rels},
          {"finite_realization_unknown", p.finite_realization_unknown}};
}

Json to_json(const Quotient& q) {
  return {{"category", to_json(*q.cat)}, {"q", to_json(q.q)}, {"words", words_json(q.words)}};
}

Json to_json(const PseudoFunctor& p) {
  Json fibres = Json::array();
  for (const CatPtr& c : p.fibre) fibres.push_back(to_json(*c));
  Json reindex = Json::array();
  for (const Functor& f : p.reindex) reindex.push_back(functor_body(f));
  Json comp = Json::array();
  for (const auto& [key, v] : p.comp_iso) comp.push_back({key.first, key.second, v});
  return {{"base", to_json(*p.base)},
          {"fibres", fibres},
          {"reindex", reindex},
          {"unit_iso", p.unit_iso},
          {"comp_iso", comp}};
}

Json to_json(const Cleavage& c) { return {{"functor", to_json(c.functor)}, {"lift", c.lift}}; }

Json to_json(const Adjunction& a) {
  return {{"left", to_json(a.left)},
          {"right", to_json(a.right)},
          {"unit", to_json(a.unit)},
          {"counit", to_json(a.counit)}};
}

Json to_json(const FibReport& r) {
  Json j = {{"opfibration", r.opfibration},
            {"direct", optional_bool(r.direct)},
            {"chevalley", optional_bool(r.chevalley)},
            {"algebra", optional_bool(r.algebra)},
            {"agreement", r.agreement()}};
  j["verdict"] = r.agreement() ? Json(r.verdict()) : Json(nullptr);
  j["missing_lift"] =
      r.missing_lift ? Json{r.missing_lift->first, r.missing_lift->second} : Json(nullptr);
  return j;
}

Json to_json(const CommaCat& c) {
  Json j = to_json(*c.cat);
  j["decode"] = c.objects;
  j["decode_morphisms"] = c.morphisms;
  j["d0"] = functor_body(c.left_proj);
  j["d1"] = functor_body(c.right_proj);
  return j;
}

Json to_json(const FreeAlgebra& t) {
  Json j = to_json(t.comma);
  j["carrier_map"] = to_json(t.carrier_map);
  return j;
}

Json to_json(const GrothendieckResult& g) {
  return {{"total", to_json(*g.total)},
          {"proj", to_json(g.proj)},
          {"decode", g.objects},
          {"decode_morphisms", g.morphisms},
          {"cleavage", g.cleavage.lift}};
}

Json to_json(const FactorizationResult& r) {
  Json j = {{"kind", r.kind == FactorKind::comprehensive ? "comprehensive" : "groupoid"},
            {"side", r.side == Side::fib ? "fib" : "opfib"},
            {"q", to_json(r.q)},
            {"mid", to_json(*r.mid)},
            {"s", to_json(r.s)},
            {"evidence", r.evidence},
            {"words", words_json(r.words)}};
  j["over_base"] = r.over_base ? to_json(*r.over_base) : Json(nullptr);
  return j;
}

Json to_json(const FibBMorphism& m) {
  return {{"f", to_json(m.f)}, {"g", to_json(m.g)}, {"p", to_json(m.p)}};
}

Json to_json(const ValidationReport& r) {
  Json vs = Json::array();
  for (const Violation& v : r.violations) vs.push_back({{"law", v.law}, {"witness", v.witness}});
  return {{"ok", r.ok()}, {"violations", vs}};
}

FinCat cat_from_json(const Json& j) { return read_cat(j, ""); }
Functor functor_from_json(const Json& j) { return read_functor(j, ""); }
NatTrans nat_from_json(const Json& j) { return read_nat(j, ""); }

TwoCellDiagram diagram_from_json(const Json& j) {
  CatPtr apex = share(read_cat(field(j, "", "apex"), "/apex"));
  Functor d0 = read_functor(field(j, "", "d0"), "/d0");
  Functor d1 = read_functor(field(j, "", "d1"), "/d1");
  NatTrans cell = read_nat(field(j, "", "cell"), "/cell");
  return {apex, std::move(d0), std::move(d1), std::move(cell)};
}

PresentedCategory presentation_from_json(const Json& j) {
  PresentedCategory p;
  p.object_count = as_int(field(j, "", "objects"), "/objects");
  const Json& gens = field(j, "", "generators");
  if (!gens.is_array()) fail("/generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto t = tuple(gens[i], "/generators/" + std::to_string(i), 2);
    check_range(t, p.object_count, "/generators/" + std::to_string(i));
    p.generators.push_back({t[0], t[1]});
  }
  const Json& rels = field(j, "", "relations");
  if (!rels.is_array()) fail("/relations", "expected an array");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    std::string path = "/relations/" + std::to_string(i);
    Relation r{as_int(field(rels[i], path, "source"), path + "/source"),
               int_array(field(rels[i], path, "lhs"), path + "/lhs"),
               int_array(field(rels[i], path, "rhs"), path + "/rhs")};
    check_range(r.lhs, static_cast<int>(p.generators.size()), path + "/lhs");
    check_range(r.rhs, static_cast<int>(p.generators.size()), path + "/rhs");
    p.relations.push_back(std::move(r));
  }
  if (j.contains("finite_realization_unknown"))
    p.finite_realization_unknown =
        as_bool(j["finite_realization_unknown"], "/finite_realization_unknown");
  return p;
}

PseudoFunctor pseudofunctor_from_json(const Json& j) {
  PseudoFunctor p;
  p.base = share(read_cat(field(j, "", "base"), "/base"));
  const FinCat& B = *p.base;
  const Json& fibres = field(j, "", "fibres");
  if (!fibres.is_array() || static_cast<int>(fibres.size()) != B.object_count())
    fail("/fibres", "expected one fibre per base object");
  for (std::size_t b = 0; b < fibres.size(); ++b)
    p.fibre.push_back(share(read_cat(fibres[b], "/fibres/" + std::to_string(b))));
  const Json& reindex = field(j, "", "reindex");
  if (!reindex.is_array() || static_cast<int>(reindex.size()) != B.morphism_count())
    fail("/reindex", "expected one functor per base morphism");
  for (int beta = 0; beta < B.morphism_count(); ++beta)
    p.reindex.push_back(read_functor(reindex[beta], "/reindex/" + std::to_string(beta),
                                     p.fibre[B.cod(beta)], p.fibre[B.dom(beta)]));
  const Json& units = field(j, "", "unit_iso");
  if (!units.is_array() || static_cast<int>(units.size()) != B.object_count())
    fail("/unit_iso", "expected one array per base object");
  for (int b = 0; b < B.object_count(); ++b) {
    std::string path = "/unit_iso/" + std::to_string(b);
    std::vector<int> u = int_array(units[b], path);
    if (static_cast<int>(u.size()) != p.fibre[b]->object_count())
      fail(path, "expected one component per fibre object");
    check_range(u, p.fibre[b]->morphism_count(), path);
    p.unit_iso.push_back(std::move(u));
  }
  const Json& comp = field(j, "", "comp_iso");
  if (!comp.is_array()) fail("/comp_iso", "expected an array");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    std::string path = "/comp_iso/" + std::to_string(i);
    if (!comp[i].is_array() || comp[i].size() != 3) fail(path, "expected [beta, beta2, components]");
    int beta = as_int(comp[i][0], path + "/0"), beta2 = as_int(comp[i][1], path + "/1");
    if (beta < 0 || beta >= B.morphism_count() || beta2 < 0 || beta2 >= B.morphism_count() ||
        B.dom(beta) != B.cod(beta2))
      fail(path, "not a composable pair of base morphisms");
    std::vector<int> v = int_array(comp[i][2], path + "/2");
    if (static_cast<int>(v.size()) != p.fibre[B.cod(beta)]->object_count())
      fail(path + "/2", "expected one component per fibre object");
    check_range(v, p.fibre[B.dom(beta2)]->morphism_count(), path + "/2");
    p.comp_iso[{beta, beta2}] = std::move(v);
  }
  return p;
}

Cleavage cleavage_from_json(const Json& j) {
  Cleavage c;
  c.functor = read_functor(field(j, "", "functor"), "/functor");
  const Json& lift = field(j, "", "lift");
  if (!lift.is_array() || static_cast<int>(lift.size()) != c.functor.source->object_count())
    fail("/lift", "expected one row per object");
  for (std::size_t a = 0; a < lift.size(); ++a) {
    std::string path = "/lift/" + std::to_string(a);
    std::vector<int> row = int_array(lift[a], path);
    if (static_cast<int>(row.size()) != c.functor.target->morphism_count())
      fail(path, "expected one entry per base morphism");
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] < -1 || row[k] >= c.functor.source->morphism_count())
        fail(path + "/" + std::to_string(k), "index out of range");
    c.lift.push_back(std::move(row));
  }
  return c;
}

FactorizationResult factorization_from_json(const Json& j) {
  FactorizationResult r;
  const Json& kind = field(j, "", "kind");
  if (kind == "comprehensive") r.kind = FactorKind::comprehensive;
  else if (kind == "groupoid") r.kind = FactorKind::groupoid;
  else fail("/kind", "expected \"comprehensive\" or \"groupoid\"");
  const Json& side = field(j, "", "side");
  if (side == "fib") r.side = Side::fib;
  else if (side == "opfib") r.side = Side::opfib;
  else fail("/side", "expected \"fib\" or \"opfib\"");
  r.q = read_functor(field(j, "", "q"), "/q");
  r.mid = r.q.target;
  r.s = read_functor(field(j, "", "s"), "/s", r.mid,
                     share(read_cat(field(field(j, "", "s"), "/s", "target"), "/s/target")));
  const Json& ev = field(j, "", "evidence");
  if (!ev.is_object()) fail("/evidence", "expected an object");
  for (auto it = ev.begin(); it != ev.end(); ++it)
    r.evidence[it.key()] = as_bool(it.value(), "/evidence/" + it.key());
  if (j.contains("words")) r.words = read_words(j["words"], "/words");
  if (j.contains("over_base") && !j["over_base"].is_null())
    r.over_base = read_functor(j["over_base"], "/over_base");
  return r;
}

FibBMorphism fibB_from_json(const Json& j) {
  return {read_functor(field(j, "", "f"), "/f"), read_functor(field(j, "", "g"), "/g"),
          read_functor(field(j, "", "p"), "/p")};
}

}  // namespace fibrifier
