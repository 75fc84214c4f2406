#include "sphmax/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sphmax/dimension.hpp"
#include "sphmax/entropy.hpp"
#include "sphmax/experiments.hpp"
#include "sphmax/typeset.hpp"

namespace sphmax::verify {

namespace {

using setgen::SetSpec;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult approx_check(const std::string& name, double got, double want, double tol) {
  CheckResult r;
  r.name = name;
  r.pass = std::abs(got - want) <= tol;
  r.detail = "got " + fmt(got) + ", want " + fmt(want) + " +- " + fmt(tol);
  return r;
}

const double kLog32 = std::log2(2.0) / std::log2(3.0);  // log_3 2

struct Family {
  std::string name;
  double beta;
  double gamma;
};

// closed-form (beta, gamma) per built-in family, from the regularity theory
std::vector<Family> builtin_families() {
  return {
      {"full", 1.0, 1.0},          {"lacunary", 0.0, 0.0},
      {"cantor(1/3)", kLog32, kLog32}, {"seq(0.5)", 2.0 / 3.0, 1.0},
      {"seq(1)", 0.5, 1.0},        {"seq(2)", 1.0 / 3.0, 1.0},
      {"cf(0.5,1)", 0.5, 1.0},     {"cf(0.25,0.5)", 0.25, 0.5},
  };
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::vector<CheckResult> run_cover_suite(std::uint64_t seed, int instances) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int mismatches = 0;
  std::string example;
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + static_cast<int>(u01(rng) * 12);
    std::vector<double> pts;
    for (int q = 0; q < n; ++q) pts.push_back(u01(rng));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const double delta = 0.01 + 0.6 * u01(rng);
    const auto greedy = entropy::cover_count_points(pts, -1.0, 2.0, delta);
    const int brute = entropy::brute_force_cover_count(pts, delta);
    if (greedy != brute) {
      ++mismatches;
      if (example.empty())
        example = "n=" + std::to_string(pts.size()) + " delta=" + fmt(delta) + " greedy=" +
                  std::to_string(greedy) + " brute=" + std::to_string(brute);
    }
  }
  CheckResult r;
  r.name = "cover: greedy equals brute force on " + std::to_string(instances) + " instances";
  r.pass = mismatches == 0;
  r.detail = mismatches ? std::to_string(mismatches) + " mismatches, e.g. " + example
                        : "0 mismatches";
  out.push_back(r);
  return out;
}

std::vector<CheckResult> run_profile_suite(int j_max, int threads) {
  std::vector<CheckResult> out;
  const auto beta_of = [&](const SetSpec& s) {
    entropy::ScanEngine engine(s, std::nullopt, setgen::kDefaultGuardBits, threads);
    return dim::beta_estimate(engine, j_max).beta;
  };
  out.push_back(approx_check("beta(full interval [1,2])",
                             beta_of(setgen::full_interval(1.0, 2.0)), 1.0, 0.02));
  out.push_back(approx_check("beta(lacunary)", beta_of(setgen::lacunary()), 0.0, 0.02));
  out.push_back(approx_check("beta(cantor 1/3)",
                             beta_of(setgen::cantor_set(1.0 / 3.0, 1.0, 2.0)), kLog32, 0.05));
  for (double a : {0.5, 1.0, 2.0}) {
    out.push_back(approx_check("beta(seq a=" + fmt(a) + ")", beta_of(setgen::sequence_set(a)),
                               1.0 / (1.0 + a), 0.07));
  }

  {
    entropy::ScanEngine engine(setgen::full_interval(1.0, 2.0), std::nullopt,
                               setgen::kDefaultGuardBits, threads);
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(0.25 * i);
    const auto prof = dim::nu_sharp_estimate(engine, grid, j_max);
    double worst = 0.0;
    for (double r : grid) worst = std::max(worst, std::abs(prof.value(r) - std::max(1.0, r)));
    out.push_back(approx_check("nu_sharp(full) vs max(1,rho), sup error", worst, 0.0, 0.1));
  }
  {
    entropy::ScanEngine engine(setgen::sequence_set(1.0), std::nullopt,
                               setgen::kDefaultGuardBits, threads);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
    const auto prof = dim::nu_sharp_estimate(engine, grid, j_max);
    double worst = 0.0;
    for (double r : grid)
      worst = std::max(worst, std::abs(prof.value(r) - (0.5 * r + 0.5)));
    out.push_back(
        approx_check("nu_sharp(seq a=1) vs 0.5 rho + 0.5, sup error", worst, 0.0, 0.1));
  }
  return out;
}

std::vector<CheckResult> run_region_suite() {
  std::vector<CheckResult> out;
  for (const auto& fam : builtin_families()) {
    const auto prof = dim::NuSharpProfile::closed_form(fam.beta, fam.gamma);
    for (int d : {2, 3}) {
      const auto rep = typeset::verify_equivalence(prof, d, 10000);
      CheckResult r;
      r.name = "region equivalence: " + fam.name + " d=" + std::to_string(d);
      r.pass = rep.disagreements == 0;
      r.detail = std::to_string(rep.checked) + " checked, " + std::to_string(rep.excluded) +
                 " near boundary, " + std::to_string(rep.disagreements) + " disagreements";
      out.push_back(r);
    }
  }

  // benchmark regions against the literature closures
  for (int d : {2, 3}) {
    {
      const auto prof = dim::NuSharpProfile::closed_form(0.0, 0.0);  // lacunary
      std::size_t bad = 0, checked = 0;
      for (int ip = 0; ip <= 100; ++ip) {
        const double p = 1.0 + 3.0 * ip / 100.0;
        for (int ia = 0; ia <= 100; ++ia) {
          const double alpha = (1.0 - d) - 0.5 + ia * ((d - 1) * (p - 1) + 1.0 - 0.5 * (1 - d)) / 100.0;
          const bool want = alpha >= 1.0 - d - 1e-9 && alpha <= (d - 1) * (p - 1.0) + 1e-9;
          const double m = typeset::theta_margin(p, alpha, prof, d);
          if (std::abs(m) <= 1e-6 ||
              std::abs(alpha - (1.0 - d)) <= 1e-6 ||
              std::abs(alpha - (d - 1) * (p - 1.0)) <= 1e-6)
            continue;
          ++checked;
          if ((m >= 0.0) != want) ++bad;
        }
      }
      CheckResult r;
      r.name = "benchmark region (lacunary) d=" + std::to_string(d);
      r.pass = bad == 0;
      r.detail = std::to_string(checked) + " checked, " + std::to_string(bad) + " disagreements";
      out.push_back(r);
    }
    {
      const auto prof = dim::NuSharpProfile::closed_form(1.0, 1.0);  // full ray
      std::size_t bad = 0, checked = 0;
      for (int ip = 0; ip <= 100; ++ip) {
        const double p = 1.0 + 3.0 * ip / 100.0;
        for (int ia = 0; ia <= 100; ++ia) {
          const double alpha = (1.0 - d) - 0.5 + ia * (((d - 1) * p - d) + 1.0 - 0.5 * (1 - d)) / 100.0;
          const bool want = alpha >= 1.0 - d - 1e-9 && alpha <= (d - 1) * p - d + 1e-9 &&
                            p >= 1.0 + 1.0 / (d - 1) - 1e-9;
          const double m = typeset::theta_margin(p, alpha, prof, d);
          if (std::abs(m) <= 1e-6 ||
              std::abs(alpha - (1.0 - d)) <= 1e-6 ||
              std::abs(alpha - ((d - 1) * p - d)) <= 1e-6 ||
              std::abs(p - (1.0 + 1.0 / (d - 1))) <= 1e-6)
            continue;
          ++checked;
          if ((m >= 0.0) != want) ++bad;
        }
      }
      CheckResult r;
      r.name = "benchmark region (full) d=" + std::to_string(d);
      r.pass = bad == 0;
      r.detail = std::to_string(checked) + " checked, " + std::to_string(bad) + " disagreements";
      out.push_back(r);
    }
  }

  // convexity of the membership indicator on a 200x200 grid
  for (const auto& fam : builtin_families()) {
    const auto prof = dim::NuSharpProfile::closed_form(fam.beta, fam.gamma);
    for (int d : {2, 3}) {
      const auto rep = typeset::convexity_check(prof, d, 200, 200);
      CheckResult r;
      r.name = "type-set convexity: " + fam.name + " d=" + std::to_string(d);
      r.pass = rep.failures == 0;
      r.detail = std::to_string(rep.members) + " members, " +
                 std::to_string(rep.pairs_checked) + " pairs, " +
                 std::to_string(rep.failures) + " failures";
      out.push_back(r);
    }
  }
  return out;
}

std::vector<CheckResult> run_geometry_suite(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  std::vector<int> dims;
  if (opt.d == 0)
    dims = {2, 3};
  else
    dims = {opt.d};
  for (int d : dims) {
    {
      const int k = opt.k > 0 ? opt.k : 5;
      const auto cfg = sphere::KnappConfig::small_k(d, opt.j, k, 1.5, 0.015625);
      const auto rep = sphere::geometry_inclusion_test(cfg, 1.5, opt.n_samples, opt.seed);
      CheckResult r;
      r.name = "inclusion small-k d=" + std::to_string(d) + " j=" + std::to_string(opt.j) +
               " k=" + std::to_string(k);
      r.pass = rep.failures == 0;
      r.detail = std::to_string(rep.samples) + " samples, " + std::to_string(rep.failures) +
                 " failures, margins h=" + fmt(rep.worst_horizontal) +
                 " v=" + fmt(rep.worst_vertical);
      out.push_back(r);
    }
    {
      const int k = opt.k > 0 ? opt.k : 9;
      const auto cfg = sphere::KnappConfig::large_k(d, opt.j, k, 1.5, 1e-2);
      const auto rep = sphere::geometry_inclusion_test(cfg, 1.5, opt.n_samples, opt.seed);
      CheckResult r;
      r.name = "inclusion large-k d=" + std::to_string(d) + " j=" + std::to_string(opt.j) +
               " k=" + std::to_string(k);
      r.pass = rep.failures == 0;
      r.detail = std::to_string(rep.samples) + " samples, " + std::to_string(rep.failures) +
                 " failures, margins h=" + fmt(rep.worst_horizontal) +
                 " shell=" + fmt(rep.worst_vertical);
      out.push_back(r);
    }
  }
  return out;
}

namespace {

struct KnappSetup {
  std::string name;
  SetSpec spec;
  double alpha;
  sphere::KnappCase knapp_case;
  sphere::KRule k_rule;
  double eps;
};

std::vector<KnappSetup> criterion10_setups() {
  std::vector<KnappSetup> v;
  v.push_back({"full small-k alpha=0", setgen::full_interval(1.0, 2.0), 0.0,
               sphere::KnappCase::SmallK, {1, 2}, 0.015625});
  v.push_back({"full large-k alpha=-0.5", setgen::full_interval(1.0, 2.0), -0.5,
               sphere::KnappCase::LargeK, {1, 1, -2}, 1e-2});
  v.push_back({"cantor small-k alpha=0", setgen::cantor_set(1.0 / 3.0, 1.0, 2.0), 0.0,
               sphere::KnappCase::SmallK, {1, 2}, 0.015625});
  v.push_back({"cantor large-k alpha=-0.5", setgen::cantor_set(1.0 / 3.0, 1.0, 2.0), -0.5,
               sphere::KnappCase::LargeK, {1, 1, -2}, 1e-2});
  return v;
}

sphere::ExperimentConfig config_for(const KnappSetup& s, const SuiteOptions& opt) {
  sphere::ExperimentConfig cfg;
  cfg.spec = s.spec;
  cfg.d = 2;
  cfg.p = opt.p;
  cfg.alpha = s.alpha;
  cfg.j_list = {6, 8, 10, 12};
  cfg.knapp_case = s.knapp_case;
  cfg.k_rule = s.k_rule;
  cfg.eps = s.eps;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  return cfg;
}

}  // namespace

std::vector<CheckResult> run_knapp_suite(const SuiteOptions& opt) {
  std::vector<CheckResult> out;

  // piece disjointness over the separated nets of the slope configs
  for (const auto& s : criterion10_setups()) {
    std::size_t overlaps = 0, pairs = 0;
    for (int j : {6, 8, 10, 12}) {
      const double delta = std::exp2(-j);
      int k = s.k_rule(j);
      if (s.knapp_case == sphere::KnappCase::SmallK) k = std::min(k, j / 2);
      entropy::ScanEngine engine(s.spec);
      const auto& level = engine.levels(j)[k];
      const auto sample = setgen::sample(s.spec, level.window, j);
      std::vector<double> radii;
      for (double u : sample.points) radii.push_back(std::exp2(u));
      const auto net = sphere::tau_net(radii, delta);
      const double eps = s.eps;
      for (std::size_t a = 0; a < net.size(); ++a) {
        for (std::size_t b = a + 1; b < net.size(); ++b) {
          ++pairs;
          // shells [t - eps delta, t + eps delta] (small k) or vertical
          // slabs centered a - t (large k): same interval geometry
          if (std::abs(net[a] - net[b]) <= 2.0 * eps * delta) ++overlaps;
        }
      }
    }
    CheckResult r;
    r.name = "piece disjointness: " + s.name;
    r.pass = overlaps == 0;
    r.detail = std::to_string(pairs) + " pairs, " + std::to_string(overlaps) + " overlaps";
    out.push_back(r);
  }

  // pointwise lower-bound constants, stable within a factor 2
  for (int d : {2, 3}) {
    for (auto knapp_case : {sphere::KnappCase::SmallK, sphere::KnappCase::LargeK}) {
      const bool small = knapp_case == sphere::KnappCase::SmallK;
      const sphere::KRule rule = small ? sphere::KRule{1, 2} : sphere::KRule{1, 1, -3};
      const double eps = small ? 0.015625 : 1e-2;
      const auto rep = sphere::pointwise_lower_bound(d, knapp_case, {8, 10, 12}, rule, eps,
                                                     1000, opt.seed);
      CheckResult r;
      r.name = std::string("pointwise bound ") + (small ? "small-k" : "large-k") +
               " d=" + std::to_string(d);
      double cmin = 1e300;
      for (const auto& row : rep.rows) cmin = std::min(cmin, row.c);
      r.pass = rep.c_ratio <= 2.0 && cmin > 0.0;
      r.detail = "c ratio " + fmt(rep.c_ratio) + ", min c " + fmt(cmin);
      out.push_back(r);
    }
  }

  // slope experiments vs the assembled exponent
  for (const auto& s : criterion10_setups()) {
    const auto rep = sphere::lower_bound_experiment(config_for(s, opt));
    CheckResult r;
    r.name = "lower-bound slope: " + s.name;
    r.pass = std::abs(rep.measured_slope - rep.theory_slope) <= 0.15;
    r.detail = "measured " + fmt(rep.measured_slope) + ", theory " + fmt(rep.theory_slope);
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> run_scaling_suite(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  for (const auto& s : criterion10_setups()) {
    const auto rep = sphere::scaling_invariance_test(config_for(s, opt), {0.5, 2.0});
    CheckResult r;
    r.name = "scaling invariance: " + s.name;
    r.pass = rep.max_rel_dev <= 1e-3;
    r.detail = "max relative deviation " + fmt(rep.max_rel_dev);
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> run_mainassu_suite(int threads) {
  std::vector<CheckResult> out;
  struct Case {
    std::string name;
    SetSpec spec;
    double p, alpha, eps;
    bool in_region;
  };
  std::vector<Case> cases;
  const SetSpec full = setgen::full_interval(1.0, 2.0);
  const SetSpec cantor = setgen::cantor_set(1.0 / 3.0, 1.0, 2.0);
  cases.push_back({"full in-region p=2.5 a=-0.5", full, 2.5, -0.5, 0.05, true});
  cases.push_back({"full out p=1.5 a=-0.5", full, 1.5, -0.5, 0.1, false});
  cases.push_back({"full out p=2.5 a=-1.5", full, 2.5, -1.5, 0.1, false});
  cases.push_back({"cantor in-region p=1.9 a=-0.5", cantor, 1.9, -0.5, 0.05, true});
  cases.push_back({"cantor out p=1.4 a=-1.5", cantor, 1.4, -1.5, 0.1, false});
  cases.push_back({"cantor out p=1.2 a=-0.5", cantor, 1.2, -0.5, 0.1, false});

  for (const auto& c : cases) {
    entropy::ScanEngine engine(c.spec, std::nullopt, setgen::kDefaultGuardBits, threads);
    const auto rep = entropy::check_mainassu(engine, 2, c.p, c.alpha, c.eps, 18);
    const double a14 = rep.cumulative[13];
    const double a18 = rep.cumulative[17];
    const double ratio = a18 / a14;
    CheckResult r;
    r.name = "hypothesis functional: " + c.name;
    r.pass = c.in_region ? (ratio <= 1.05) : (ratio >= 2.0);
    r.detail = "A(14)=" + fmt(a14) + " A(18)=" + fmt(a18) + " ratio=" + fmt(ratio) +
               (c.in_region ? " (expect bounded)" : " (expect divergent)");
    out.push_back(r);
  }
  return out;
}

}  // namespace sphmax::verify
