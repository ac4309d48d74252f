#include "fibrifier/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fibrifier/corpus.hpp"
#include "fibrifier/dot.hpp"
#include "fibrifier/errors.hpp"
#include "fibrifier/serialize.hpp"

namespace fibrifier {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return parse_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream o(path);
  if (!o) throw ParseError(path + ": cannot write");
  o << text;
}

long default_cap() {
  if (const char* env = std::getenv("FIBRIFIER_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw ParseError("FIBRIFIER_CAP must be a positive integer");
  }
  return kDefaultCap;
}

CriteriaSet parse_criteria(const std::vector<std::string>& names) {
  if (names.empty()) return {};
  CriteriaSet c{false, false, false};
  for (const std::string& n : names) {
    if (n == "direct") c.direct = true;
    else if (n == "chevalley") c.chevalley = true;
    else if (n == "algebra") c.algebra = true;
    else throw ParseError("unknown criterion: " + n);
  }
  return c;
}

Json fibrewise_json(const FibrewiseResult& w) {
  std::vector<Json> units;
  for (const Quotient& q : w.fibre_units) units.push_back(to_json(q));
  Json words = Json::array();
  for (const auto& word : w.words) {
    Json letters = Json::array();
    for (const Letter& l : word) letters.push_back({l.morphism, l.inverse});
    words.push_back(letters);
  }
  return {{"q", to_json(w.q)},
          {"s", to_json(w.s)},
          {"mid", to_json(w.mid)},
          {"reflected", to_json(w.reflected)},
          {"fibre_units", units},
          {"words", words}};
}

struct Options {
  std::string out;
  long cap = 0;
  std::string input, input2, kind, klass, mode;
  std::vector<std::string> criteria;
  bool identity_counit = false, identity_unit = false;
  bool pi0 = false, groupoid = false, comprehensive = false;
  std::string side = "opfib", over, dot_prefix, s_out;
  std::string suite, report;
  GenConfig gen;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibrations, comma objects and factorization systems on finite categories"};
  app.name("fibrifier");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "write the result to this file instead of stdout");
  app.add_option("--cap", o.cap, "bound on enumerated morphisms (default FIBRIFIER_CAP or 10000)")
      ->check(CLI::PositiveNumber);

  auto* validate_cmd = app.add_subcommand("validate", "check the laws of a category, functor or transformation");
  validate_cmd->add_option("input", o.input, "JSON document")->required();

  auto* comma_cmd = app.add_subcommand("comma", "comma category f/g");
  comma_cmd->add_option("f", o.input)->required();
  comma_cmd->add_option("g", o.input2)->required();

  auto* iso_cmd = app.add_subcommand("iso-comma", "iso-comma category of f");
  iso_cmd->add_option("f", o.input)->required();

  auto* monad = app.add_subcommand("monad", "free algebra of f for the R, L or I monad");
  monad->add_option("kind", o.kind)->required()->check(CLI::IsMember({"R", "L", "I"}));
  monad->add_option("f", o.input)->required();

  auto* adjoint = app.add_subcommand("adjoint", "find a right or left adjoint of f; prints none when absent");
  adjoint->add_option("side", o.kind)->required()->check(CLI::IsMember({"right", "left"}));
  adjoint->add_option("f", o.input)->required();
  adjoint->add_flag("--identity-counit", o.identity_counit, "require an identity counit (right)");
  adjoint->add_flag("--identity-unit", o.identity_unit, "require an identity unit (left)");

  auto* check = app.add_subcommand("check", "decide a class of functors; exit 0 if f belongs to it, 1 if not");
  check->add_option("f", o.input)->required();
  check->add_option("--class", o.klass, "class of functors")
      ->required()
      ->check(CLI::IsMember({"fibration", "opfibration", "isofibration", "street", "street-opfibration",
                             "discrete", "discrete-opfibration", "conservative"}));
  check->add_option("--criteria", o.criteria, "subset of direct, chevalley, algebra")->delimiter(',');

  auto* identee_cmd = app.add_subcommand("identee", "the identee 2-cell of f");
  identee_cmd->add_option("f", o.input)->required();
  auto* invertee_cmd = app.add_subcommand("invertee", "the invertee 2-cell of f");
  invertee_cmd->add_option("f", o.input)->required();

  auto* coidentify = app.add_subcommand("coidentify", "coidentifier of a 2-cell diagram");
  coidentify->add_option("diagram", o.input)->required();
  auto* coinvert = app.add_subcommand("coinvert", "coinverter of a 2-cell diagram");
  coinvert->add_option("diagram", o.input)->required();

  auto* groth = app.add_subcommand("grothendieck", "Grothendieck construction of a pseudofunctor");
  groth->add_option("pseudofunctor", o.input)->required();

  auto* cleave = app.add_subcommand("cleave", "a normalized cleavage of f; prints none for non-fibrations");
  cleave->add_option("f", o.input)->required();

  auto* fibrewise = app.add_subcommand("fibrewise", "apply pi0 or the groupoid reflection to every fibre");
  fibrewise->add_option("f", o.input)->required();
  auto* pi0_flag = fibrewise->add_flag("--pi0", o.pi0, "connected components");
  auto* gpd_flag = fibrewise->add_flag("--groupoid", o.groupoid, "groupoid reflection");
  pi0_flag->excludes(gpd_flag);

  auto* factorize = app.add_subcommand("factorize", "factorize f; with --over, factorize in fibrations over a base");
  factorize->add_option("f", o.input)->required();
  auto* comp_flag = factorize->add_flag("--comprehensive", o.comprehensive, "discrete (op)fibration factor");
  auto* gpd2 = factorize->add_flag("--groupoid", o.groupoid, "(op)fibration in groupoids factor");
  comp_flag->excludes(gpd2);
  factorize->add_option("--side", o.side, "fib or opfib")->check(CLI::IsMember({"fib", "opfib"}));
  factorize->add_option("--over", o.over, "document with fibrations f and g over a common base; f is then p");
  factorize->add_option("--dot", o.dot_prefix, "also write PREFIX-q.dot, PREFIX-mid.dot, PREFIX-s.dot");
  factorize->add_option("--s-out", o.s_out, "also write the right factor s as a functor document");

  auto* corpus = app.add_subcommand("corpus", "generated property suites");
  auto* run = corpus->add_subcommand("run", "run a suite; exit 0 iff no instance fails");
  corpus->require_subcommand(1);
  corpus->fallthrough();
  run->add_option("--suite", o.suite)->required()->check(CLI::IsMember(suite_names()));
  run->add_option("--seed", o.gen.seed);
  run->add_option("--count", o.gen.instance_count)->check(CLI::NonNegativeNumber);
  run->add_option("--max-objects", o.gen.max_objects)->check(CLI::PositiveNumber);
  run->add_option("--max-morphisms", o.gen.max_morphisms)->check(CLI::PositiveNumber);
  run->add_option("--fibre-size", o.gen.fibre_size_bound)->check(CLI::PositiveNumber);
  run->add_option("--base-size", o.gen.base_size_bound)->check(CLI::PositiveNumber);
  run->add_option("--json", o.report, "write the full report here");

  auto* export_dot = app.add_subcommand("export-dot", "DOT rendering of a category, functor or factorization");
  export_dot->add_option("input", o.input)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitTrue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    err << "fibrifier: " << e.what() << "\n";
    return kExitInvalid;
  }

  std::ostringstream result;
  auto emit = [&](const Json& j) { result << dump(j); };
  int code = kExitTrue;
  try {
    long cap = o.cap > 0 ? o.cap : default_cap();
    auto functor = [&] {
      Functor f = functor_from_json(read_json(o.input));
      auto report = fibrifier::validate(f);
      if (!report.ok()) throw ParseError(o.input + ": functor violates " + report.violations.front().law);
      return f;
    };

    if (validate_cmd->parsed()) {
      Json j = read_json(o.input);
      ValidationReport r;
      if (j.contains("compose")) r = fibrifier::validate(cat_from_json(j));
      else if (j.contains("components")) r = fibrifier::validate(nat_from_json(j));
      else r = fibrifier::validate(functor_from_json(j));
      emit(to_json(r));
      code = r.ok() ? kExitTrue : kExitFalse;
    } else if (comma_cmd->parsed()) {
      Functor f = functor();
      std::swap(o.input, o.input2);
      emit(to_json(comma(f, functor())));
    } else if (iso_cmd->parsed()) {
      emit(to_json(iso_comma(functor())));
    } else if (monad->parsed()) {
      MonadKind k = o.kind == "R" ? MonadKind::R : o.kind == "L" ? MonadKind::L : MonadKind::I;
      emit(to_json(monad_object(k, functor())));
    } else if (adjoint->parsed()) {
      Functor f = functor();
      auto a = o.kind == "right" ? find_right_adjoint(f, o.identity_counit) : find_left_adjoint(f, o.identity_unit);
      if (a) emit(to_json(*a));
      else result << "none\n", code = kExitFalse;
    } else if (check->parsed()) {
      Functor f = functor();
      CriteriaSet criteria = parse_criteria(o.criteria);
      if (o.klass == "fibration" || o.klass == "opfibration") {
        FibReport r = o.klass == "fibration" ? is_fibration(f, criteria) : is_opfibration(f, criteria);
        emit(to_json(r));
        code = r.verdict() ? kExitTrue : kExitFalse;
      } else {
        bool v = o.klass == "isofibration"           ? is_isofibration(f)
                 : o.klass == "street"               ? is_street_fibration(f)
                 : o.klass == "street-opfibration"   ? is_street_opfibration(f)
                 : o.klass == "discrete"             ? is_discrete_fibration(f)
                 : o.klass == "discrete-opfibration" ? is_discrete_opfibration(f)
                                                     : is_conservative(f);
        emit({{"class", o.klass}, {"verdict", v}});
        code = v ? kExitTrue : kExitFalse;
      }
    } else if (identee_cmd->parsed()) {
      emit(to_json(identee(functor())));
    } else if (invertee_cmd->parsed()) {
      emit(to_json(invertee(functor())));
    } else if (coidentify->parsed() || coinvert->parsed()) {
      TwoCellDiagram d = diagram_from_json(read_json(o.input));
      emit(to_json(coidentify->parsed() ? coidentifier(d, cap) : coinverter(d, cap)));
    } else if (groth->parsed()) {
      emit(to_json(grothendieck_construction(pseudofunctor_from_json(read_json(o.input)))));
    } else if (cleave->parsed()) {
      auto c = extract_cleavage(functor());
      if (c) emit(to_json(*c));
      else result << "none\n", code = kExitFalse;
    } else if (fibrewise->parsed()) {
      if (!o.pi0 && !o.groupoid) throw ParseError("fibrewise: give --pi0 or --groupoid");
      emit(fibrewise_json(fibrewise_apply(functor(), o.pi0 ? Reflection::pi0 : Reflection::groupoid, cap)));
    } else if (factorize->parsed()) {
      if (!o.comprehensive && !o.groupoid) throw ParseError("factorize: give --comprehensive or --groupoid");
      Functor f = functor();
      FactorizationResult r;
      if (!o.over.empty()) {
        FibBMorphism m = fibB_from_json(read_json(o.over));
        m.p = f;
        r = factor_in_fibB(m, o.groupoid ? FibBMode::coinverter : FibBMode::coidentifier, cap);
      } else {
        Side side = o.side == "fib" ? Side::fib : Side::opfib;
        r = o.groupoid ? groupoid_fibre_factorization(f, side, cap) : comprehensive_factorization(f, side);
      }
      emit(to_json(r));
      if (!o.dot_prefix.empty()) {
        write_text(o.dot_prefix + "-q.dot", to_dot(r.q));
        write_text(o.dot_prefix + "-mid.dot", to_dot(*r.mid));
        write_text(o.dot_prefix + "-s.dot", to_dot(r.s));
      }
      if (!o.s_out.empty()) write_text(o.s_out, dump(to_json(r.s)));
      code = r.evidence_ok() ? kExitTrue : kExitFalse;
    } else if (run->parsed()) {
      SuiteReport r = run_suite(o.gen, o.suite);
      if (!o.report.empty()) write_text(o.report, dump(r.to_json()));
      result << o.suite << ": " << r.instances.size() << " instances, " << r.failures() << " failed, "
             << r.inconclusive() << " inconclusive\n";
      for (const InstanceReport& i : r.instances)
        for (const CheckResult& c : i.checks)
          if (c.status == Status::fail)
            result << "  #" << i.index << " " << i.label << ": " << c.name << (c.note.empty() ? "" : ": ")
                   << c.note << "\n";
      code = r.passed() ? kExitTrue : kExitFalse;
    } else if (export_dot->parsed()) {
      Json j = read_json(o.input);
      if (j.contains("compose")) result << to_dot(cat_from_json(j));
      else if (j.contains("mid")) result << to_dot(factorization_from_json(j));
      else result << to_dot(functor_from_json(j));
    }
  } catch (const CapExceeded& e) {
    err << "fibrifier: " << e.what() << "\n";
    return kExitCap;
  } catch (const ParseError& e) {
    err << "fibrifier: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "fibrifier: " << e.what() << "\n";
    return kExitInvalid;
  }

  if (o.out.empty()) {
    out << result.str();
  } else {
    try {
      write_text(o.out, result.str());
    } catch (const ParseError& e) {
      err << "fibrifier: " << e.what() << "\n";
      return kExitInvalid;
    }
  }
  return code;
}

}  // namespace fibrifier
