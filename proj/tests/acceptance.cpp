// Acceptance suite: runs every agreed criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "sphmax/verify.hpp"

namespace {

struct Criterion {
  std::string label;
  std::vector<sphmax::verify::CheckResult> results;
  double seconds = 0.0;
};

template <class F>
Criterion run(const std::string& label, F&& fn) {
  Criterion c;
  c.label = label;
  const auto t0 = std::chrono::steady_clock::now();
  c.results = fn();
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

}  // namespace

int main() {
  using namespace sphmax::verify;
  std::vector<Criterion> criteria;

  SuiteOptions opt;
  opt.threads = 4;

  criteria.push_back(run("01 covering oracle (greedy == brute force, 500 instances)",
                         [] { return run_cover_suite(20250809, 500); }));
  criteria.push_back(run("02+03 dimension closed forms and nu_sharp profiles (jmax=20)",
                         [&] { return run_profile_suite(20, opt.threads); }));
  criteria.push_back(run("04+05+06 region equivalence, benchmarks, convexity",
                         [] { return run_region_suite(); }));
  criteria.push_back(run("07 knapp geometry inclusion (1e5 samples)", [&] {
    SuiteOptions g = opt;
    g.n_samples = 100000;
    return run_geometry_suite(g);
  }));
  criteria.push_back(run("08+09+10 disjointness, pointwise bounds, lower-bound slopes",
                         [&] { return run_knapp_suite(opt); }));
  criteria.push_back(
      run("11 scaling invariance (lambda in {1/2, 2})", [&] { return run_scaling_suite(opt); }));
  criteria.push_back(run("12 hypothesis functional boundedness",
                         [&] { return run_mainassu_suite(opt.threads); }));

  int failures = 0;
  for (const auto& c : criteria) {
    bool pass = true;
    for (const auto& r : c.results) pass &= r.pass;
    std::printf("[%s] %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.label.c_str(), c.seconds);
    for (const auto& r : c.results) {
      if (!r.pass) {
        std::printf("       FAILED check: %s -- %s\n", r.name.c_str(), r.detail.c_str());
        ++failures;
      }
    }
  }
  if (failures) std::printf("%d failed checks\n", failures);
  return failures == 0 ? 0 : 1;
}
