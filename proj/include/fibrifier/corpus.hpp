#pragma once

// Seeded generators of small categories, functors and fibrations, and the
// runner for the property suites.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fibrifier/category.hpp"
#include "fibrifier/factor.hpp"
#include "fibrifier/fibration.hpp"

namespace fibrifier {

struct GenConfig {
  std::uint64_t seed = 1;
  int max_objects = 8;
  int max_morphisms = 48;
  int fibre_size_bound = 3;
  int base_size_bound = 3;
  int instance_count = 300;
};

/// Throws Error when a bound is not positive.
void check_config(const GenConfig& cfg);

/// The configuration of the i-th instance of a run: same bounds, derived seed.
GenConfig instance_config(const GenConfig& cfg, int i);

// All generators are pure functions of the configuration.
FinCat gen_category(const GenConfig& cfg);
Functor gen_functor(const GenConfig& cfg);

struct GeneratedFibration {
  Functor functor;
  Cleavage cleavage;
  std::string recipe;
};

/// Built constructively: product projections, free R-algebras, sums of
/// representables, Grothendieck constructions of strict functors over
/// forests, and pullbacks of these.
GeneratedFibration gen_fibration(const GenConfig& cfg);
Functor gen_isofibration(const GenConfig& cfg);
FibBMorphism gen_fibB_morphism(const GenConfig& cfg);

/// The named examples: 1, 2, I, the square, 1 -> I and the non-constant 2 -> I.
std::vector<std::pair<std::string, Functor>> curated_functors();

enum class Status { pass, fail, inconclusive };

struct CheckResult {
  std::string name;
  Status status = Status::pass;
  std::string note;
};

struct InstanceReport {
  int index = 0;
  std::string label;
  std::vector<CheckResult> checks;
  /// The failing instance, and the smallest failing variant found by
  /// shrinking; null when everything passed.
  nlohmann::json witness;
  nlohmann::json shrunk;

  bool passed() const;
  bool conclusive() const;
};

struct SuiteReport {
  std::string suite;
  GenConfig config;
  std::vector<InstanceReport> instances;

  bool passed() const;
  int failures() const;
  int inconclusive() const;
  nlohmann::json to_json() const;
};

std::vector<std::string> suite_names();

/// Runs one named suite on cfg.instance_count instances. Throws Error on an
/// unknown name.
SuiteReport run_suite(const GenConfig& cfg, const std::string& suite);

/// Deletes objects and morphisms of the source (and unused objects of the
/// target) while `fails` keeps holding; returns the smallest variant found.
Functor shrink(const Functor& f, const std::function<bool(const Functor&)>& fails);

}  // namespace fibrifier
