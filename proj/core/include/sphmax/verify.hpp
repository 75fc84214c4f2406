#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sphmax::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  int threads = 1;
  std::uint64_t seed = 7;
  // geometry suite overrides
  int d = 0;       // 0 = both
  int j = 12;
  int k = 0;       // 0 = per-case default
  std::uint64_t n_samples = 100000;
  double p = 2.0;
};

// greedy covering count == exhaustive brute force on random instances
std::vector<CheckResult> run_cover_suite(std::uint64_t seed = 20250809, int instances = 500);

// closed-form beta targets and nu_sharp profiles at j_max = 20
std::vector<CheckResult> run_profile_suite(int j_max = 20, int threads = 1);

// explicit/implicit region equivalence, benchmark regions, convexity
std::vector<CheckResult> run_region_suite();

// Knapp inclusion sampling (small-k and large-k)
std::vector<CheckResult> run_geometry_suite(const SuiteOptions& opt = {});

// piece disjointness, pointwise lower-bound constants, slope experiments
std::vector<CheckResult> run_knapp_suite(const SuiteOptions& opt = {});

// norm-ratio invariance under dilations lambda in {1/2, 2}
std::vector<CheckResult> run_scaling_suite(const SuiteOptions& opt = {});

// boundedness/divergence of the covering-count hypothesis functional
std::vector<CheckResult> run_mainassu_suite(int threads = 1);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace sphmax::verify
