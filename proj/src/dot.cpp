#include "fibrifier/dot.hpp"

#include <algorithm>
#include <sstream>

namespace fibrifier {

namespace {

void cluster(std::ostringstream& out, const FinCat& c, const std::string& name) {
  out << "  subgraph cluster_" << name << " {\n    label=\"" << name << "\";\n";
  for (int a = 0; a < c.object_count(); ++a)
    out << "    " << name << "_" << a << " [label=\"" << a << "\"];\n";
  for (int m : generating_morphisms(c))
    out << "    " << name << "_" << c.dom(m) << " -> " << name << "_" << c.cod(m) << " [label=\"m"
        << m << "\"];\n";
  out << "  }\n";
}

void object_map(std::ostringstream& out, const Functor& f, const std::string& from,
                const std::string& to, const std::string& label) {
  for (int a = 0; a < static_cast<int>(f.obj.size()); ++a)
    out << "  " << from << "_" << a << " -> " << to << "_" << f.obj[a]
        << " [style=dashed, label=\"" << label << "\"];\n";
}

}  // namespace

std::vector<int> generating_morphisms(const FinCat& c) {
  std::vector<char> reached(c.morphism_count(), 0);
  for (int a = 0; a < c.object_count(); ++a) reached[c.identity(a)] = 1;
  // irreducible morphisms first, then whatever they miss in index order
  std::vector<char> composite(c.morphism_count(), 0);
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g : c.out(c.cod(f)))
      if (!c.is_identity(f) && !c.is_identity(g)) composite[c.compose(g, f)] = 1;
  std::vector<int> order;
  for (int pass = 0; pass < 2; ++pass)
    for (int m = 0; m < c.morphism_count(); ++m)
      if (composite[m] == pass) order.push_back(m);
  std::vector<int> gens;
  for (int m : order) {
    if (reached[m]) continue;
    gens.push_back(m);
    reached[m] = 1;
    // close under composition
    bool changed = true;
    while (changed) {
      changed = false;
      for (int f = 0; f < c.morphism_count(); ++f) {
        if (!reached[f]) continue;
        for (int g : c.out(c.cod(f))) {
          if (!reached[g]) continue;
          int gf = c.compose(g, f);
          if (!reached[gf]) reached[gf] = 1, changed = true;
        }
      }
    }
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

std::string to_dot(const FinCat& c) {
  std::ostringstream out;
  out << "digraph C {\n";
  for (int a = 0; a < c.object_count(); ++a) out << "  " << a << ";\n";
  for (int m : generating_morphisms(c))
    out << "  " << c.dom(m) << " -> " << c.cod(m) << " [label=\"m" << m << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const Functor& f) {
  std::ostringstream out;
  out << "digraph F {\n";
  cluster(out, *f.source, "A");
  cluster(out, *f.target, "B");
  object_map(out, f, "A", "B", "f");
  out << "}\n";
  return out.str();
}

std::string to_dot(const FactorizationResult& r) {
  std::ostringstream out;
  out << "digraph factorization {\n";
  cluster(out, *r.q.source, "A");
  cluster(out, *r.mid, "M");
  cluster(out, *r.s.target, "B");
  object_map(out, r.q, "A", "M", "q");
  object_map(out, r.s, "M", "B", "s");
  out << "}\n";
  return out.str();
}

}  // namespace fibrifier
