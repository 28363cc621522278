#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucr/relation_matrix.hpp"

namespace ucr {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass = true;
};

struct SuiteOptions {
  int degree = 4;
  std::uint64_t seed = 0x5eed;
  double relation_tol = 1e-10;
  double intertwiner_tol = 1e-10;
  double nest_tol = 1e-12;
  double mobius_tol = 1e-9;
};

/// Known suite names: relations, commutant, intertwiner, characters, core,
/// mobius; "all" expands to every one of them.
std::vector<std::string> suite_names();

/// Runs the named residual suites on one relation matrix at the given
/// truncation.  Throws Error for unknown suite names.
std::vector<SuiteReport> run_suites(const RelationMatrix& rel,
                                    const std::vector<std::string>& names,
                                    const SuiteOptions& options = {});

// Individual suites.
SuiteReport relations_suite(const RelationMatrix& rel, const SuiteOptions&);
SuiteReport commutant_suite(const RelationMatrix& rel, const SuiteOptions&);
SuiteReport intertwiner_suite(const RelationMatrix& rel, const SuiteOptions&);
SuiteReport characters_suite(const RelationMatrix& rel, const SuiteOptions&);
SuiteReport core_suite(const RelationMatrix& rel, const SuiteOptions&);
SuiteReport mobius_suite(const RelationMatrix& rel, const SuiteOptions&);

}  // namespace ucr
