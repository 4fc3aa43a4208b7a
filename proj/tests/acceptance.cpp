// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qw/verify.hpp"

using namespace qw;

namespace {

const ClassSpec kA1{"A1", {0}};
const ClassSpec kA2Cox{"A2", {0, 1}};
const ClassSpec kB2Cox{"B2", {0, 1}};
const std::vector<ClassSpec> kCore{kA1, kA2Cox, kB2Cox};

struct Criterion {
  int number;
  std::string title;
  std::function<Check()> run;
  double budget_seconds;  // per class where the criterion says so
  int classes = 1;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "mCYBE for A1 s, A2 Cox, B2 Cox, A3 s1s3, A3 Cox",
       [] { return check_mcybe({kA1, kA2Cox, kB2Cox, {"A3", {0, 2}}, {"A3", {0, 1, 2}}}); }, 10},
      {2, "associated orderings for all classes of A2, B2, G2, A3",
       [] {
         std::vector<ClassSpec> all;
         for (const char* t : {"A2", "B2", "G2", "A3"})
           for (const ClassSpec& c : all_classes(t)) all.push_back(c);
         return check_associated_orderings(all);
       },
       60, 1},
      {3, "Bruhat round trip, 100 per cell in A1, A2, B2",
       [] { return check_bruhat_round_trip({"A1", "A2", "B2"}, 100, 0); }, 600},
      {4, "slice round trip, 100 per class", [] { return check_slice_round_trip(kCore, 100, 0); }, 600},
      {5, "projection idempotent and N-invariant, 50 points x 20 conjugations",
       [] { return check_projection(kCore, 50, 20, 0); }, 600},
      {6, "skew-symmetry and Jacobi (nested jets), 10 points per class",
       [] { return check_bracket_axioms(kCore, 10, 0); }, 600},
      // Coxeter slices are Poisson-commutative, so three non-Coxeter classes are added
      {7, "reduced bracket direct == projected, 25 slice points per class",
       [] {
         return check_reduced_equivalence({kA1, kA2Cox, kB2Cox, {"A2", {0}}, {"B2", {1}}, {"A3", {0, 2}}}, 25, 0);
       },
       300, 6},
      {8, "q is Poisson at 10 dual pairs in A1 and A2",
       [] { return check_q_poisson({kA1, kA2Cox, {"A2", {0}}}, 10, 0); }, 600},
      {9, "lambda = 3 scales brackets of criteria 6-8 by 1/3",
       [] { return check_form_scaling({kA1, kA2Cox, kB2Cox, {"A2", {0}}}, 5, Rational(3), 0); }, 600},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Check r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.passed = false;
      r.first_failure = e.what();
    }
    bool in_time = r.seconds <= c.budget_seconds * c.classes;
    bool ok = r.passed && r.samples > 0 && in_time;
    failed += !ok;
    std::printf("criterion %d: %s  %s  [%lld checks, %lld failed, %.2f s]%s%s\n", c.number, ok ? "PASS" : "FAIL",
                c.title.c_str(), r.samples, r.failures, r.seconds, r.first_failure.empty() ? "" : "  first failure: ",
                r.first_failure.c_str());
    if (!in_time) std::printf("  over the time budget of %.0f s\n", c.budget_seconds * c.classes);
  }
  std::printf("%s: %d of %zu criteria passed\n", failed ? "FAIL" : "PASS", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
