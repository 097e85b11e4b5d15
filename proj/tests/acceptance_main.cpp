// Acceptance gate: every criterion with its pinned parameters, tolerances
// and runtime budget, one PASS/FAIL line each. Exit status 0 only when all
// pass.

#include <cstdio>
#include <string>
#include <vector>

#include "uniconj/verify.hpp"

using uniconj::verify::SuiteResult;

namespace {

struct Criterion {
  int id;
  std::string label;
  double budget_seconds;
  SuiteResult result;
};

void report(const Criterion& c, bool budget_ok) {
  std::string note = c.result.detail.empty() ? "" : "  -- " + c.result.detail;
  std::printf("[%2d] %s  %-24s %9lld checks %8.2fs (budget %.0fs)%s\n", c.id,
              (c.result.pass && budget_ok) ? "PASS" : "FAIL", c.label.c_str(),
              c.result.checks, c.result.seconds, c.budget_seconds,
              note.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  using namespace uniconj::verify;
  std::vector<Criterion> criteria;
  bool all = true;
  auto run = [&](int id, const std::string& label, double budget,
                 SuiteResult res) {
    Criterion c{id, label, budget, std::move(res)};
    bool budget_ok = c.result.seconds < c.budget_seconds;
    report(c, budget_ok);
    all = all && c.result.pass && budget_ok;
  };

  run(1, "criterion-forward", 60, criterion_forward(1, 1000, 4, 6, 4));
  run(2, "oracle-agreement", 120, oracle_agreement(2, 500, 8));
  run(3, "nonuniform-family", 30, nonuniform_family(4, 4));
  run(4, "geometry-delta0", 300, geometry_suite(4, 10000, 4, 10));
  run(5, "axes-bound", 120, axes_bound_suite(4));
  run(6, "decompositions", 120, decomposition_suite(6, 200, 6));
  run(7, "whitehead-orbit", 300, whitehead_suite(7, 5, 200));
  run(8, "mixed-cross-validation", 600, mixed_suite(8, 100, 8, 3, 6));
  run(9, "inner-endomorphisms", 60, inner_suite(9, 100, 3));
  run(10, "constants-engine", 30, bounds_suite(10, 100));
  run(11, "dehn-ball", 180, dehn_suite(4));

  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                          : "ACCEPTANCE: FAILURES PRESENT");
  return all ? 0 : 1;
}
