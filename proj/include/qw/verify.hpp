#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qw/poisson.hpp"

namespace qw {

struct ClassSpec {
  std::string type;
  std::vector<int> s;  // 0-based simple indices
  std::string label() const;
};

/// Outcome of one exact check over a sample set.
struct Check {
  Check() = default;
  explicit Check(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  long long samples = 0;
  long long failures = 0;
  std::string first_failure;
  double seconds = 0;

  void record(bool ok, const std::string& what);
  void merge(const Check& other);
};

std::vector<ClassSpec> all_classes(const std::string& type);

// Property suites. Every random choice comes from std::mt19937(seed).
Check check_mcybe(const std::vector<ClassSpec>& classes);
Check check_associated_orderings(const std::vector<ClassSpec>& classes);
Check check_bruhat_round_trip(const std::vector<std::string>& types, int per_cell, unsigned seed);
Check check_slice_round_trip(const std::vector<ClassSpec>& classes, int per_class, unsigned seed);
Check check_projection(const std::vector<ClassSpec>& classes, int points, int conjugations, unsigned seed);
Check check_bracket_axioms(const std::vector<ClassSpec>& classes, int points, unsigned seed);
Check check_reduced_equivalence(const std::vector<ClassSpec>& classes, int points, unsigned seed);
Check check_q_poisson(const std::vector<ClassSpec>& classes, int pairs, unsigned seed);
Check check_form_scaling(const std::vector<ClassSpec>& classes, int points, const Rational& lambda, unsigned seed);

/// Smaller per-class versions of the suites above, for the verify command.
std::vector<Check> verify_class(const ClassSpec& c, unsigned seed);

}  // namespace qw
