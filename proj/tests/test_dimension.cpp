#include <doctest.h>

#include <cmath>

#include "sphmax/dimension.hpp"

using namespace sphmax;
using namespace sphmax::dim;

namespace {
const double kLog32 = std::log2(2.0) / std::log2(3.0);

entropy::ScanEngine engine_of(const char* text) {
  return entropy::ScanEngine(setgen::parse_set_spec(text));
}
}  // namespace

TEST_CASE("beta estimates at moderate depth") {
  // unit-test depth; the acceptance suite pins the j_max = 20 tolerances
  auto full = engine_of("interval(lo=1,hi=2)");
  CHECK(beta_estimate(full, 16).beta == doctest::Approx(1.0).epsilon(0.03));

  auto lac = engine_of("lacunary");
  CHECK(std::abs(beta_estimate(lac, 16).beta) < 0.02);

  auto cantor = engine_of("cantor(ratio=0.3333333333,lo=1,hi=2)");
  CHECK(std::abs(beta_estimate(cantor, 16).beta - kLog32) < 0.06);

  auto seq1 = engine_of("seq(a=1)");
  CHECK(std::abs(beta_estimate(seq1, 16).beta - 0.5) < 0.08);
}

TEST_CASE("assouad spectrum estimates") {
  auto full = engine_of("interval(lo=1,hi=2)");
  CHECK(std::abs(assouad_spectrum_estimate(full, 0.5, 16).dim - 1.0) < 0.05);

  auto lac = engine_of("lacunary");
  CHECK(std::abs(assouad_spectrum_estimate(lac, 0.5, 16).dim) < 0.05);

  auto seq1 = engine_of("seq(a=1)");
  CHECK(std::abs(assouad_spectrum_estimate(seq1, 0.5, 18).dim - 1.0) < 0.1);

  // nu is definitional
  const auto pt = assouad_spectrum_estimate(full, 0.3, 12);
  CHECK(pt.nu == doctest::Approx(-(1.0 - 0.3) * pt.dim));

  CHECK(assouad_spectrum_estimate(full, 0.95, 12).few_scales);
  CHECK_THROWS(assouad_spectrum_estimate(full, 1.5, 12));
}

TEST_CASE("closed-form profiles") {
  const auto p = NuSharpProfile::closed_form(0.5, 1.0);
  CHECK(p.value(-1.0) == 0.5);
  CHECK(p.value(0.5) == doctest::Approx(0.75));  // (1 - beta/gamma) rho + beta
  CHECK(p.value(2.0) == doctest::Approx(2.0));
  CHECK(p.rho_star() == 0.0);

  // degenerate beta == gamma follows the max(rho, beta) convention
  const auto reg = NuSharpProfile::closed_form(kLog32, kLog32);
  CHECK(reg.value(0.4) == doctest::Approx(kLog32));
  CHECK(reg.value(0.9) == doctest::Approx(0.9));
  CHECK(reg.rho_star() == doctest::Approx(kLog32));

  CHECK_THROWS(NuSharpProfile::closed_form(0.7, 0.5));
  CHECK_THROWS(NuSharpProfile::closed_form(-0.1, 0.5));
}

TEST_CASE("sampled profile invariants") {
  auto engine = engine_of("seq(a=1)");
  std::vector<double> grid;
  for (int i = -2; i <= 15; ++i) grid.push_back(0.1 * i);
  const auto prof = nu_sharp_estimate(engine, grid, 14);

  // left constancy
  CHECK(prof.value(-0.2) == prof.beta());
  CHECK(prof.value(-5.0) == prof.beta());

  // envelope and monotonicity on the grid
  double prev = -1.0;
  for (const auto& s : prof.samples()) {
    CHECK(s.value >= prev);
    prev = s.value;
    CHECK(s.value >= std::max(s.rho, prof.beta()) - 1e-12);
    CHECK(s.value <= std::max(1.0, s.rho) + 1e-12);
  }

  // consistency with the beta estimator
  const auto be = beta_estimate(engine, 14);
  CHECK(std::abs(prof.value(0.0) - be.beta) < 0.05);

  // gamma and rho_star in their stated ranges
  CHECK(prof.gamma() >= prof.beta());
  CHECK(prof.gamma() <= 1.0);
  CHECK(prof.rho_star() >= 0.0);
  CHECK(prof.rho_star() <= prof.beta());
}

TEST_CASE("gamma and rho_star on closed forms") {
  CHECK(gamma_estimate(NuSharpProfile::closed_form(0.5, 1.0)) == doctest::Approx(1.0));
  CHECK(gamma_estimate(NuSharpProfile::closed_form(kLog32, kLog32)) ==
        doctest::Approx(kLog32));
  CHECK(rho_star(NuSharpProfile::closed_form(0.5, 1.0)) == doctest::Approx(0.0));
  CHECK(rho_star(NuSharpProfile::closed_form(1.0, 1.0)) == doctest::Approx(1.0));
  CHECK(rho_star(NuSharpProfile::closed_form(0.0, 0.0)) == doctest::Approx(0.0));
}

TEST_CASE("profiles are exactly dilation invariant") {
  auto base = engine_of("cantor(ratio=0.3333333333,lo=1,hi=2)");
  auto moved = entropy::ScanEngine(
      setgen::scaled(5.0, setgen::parse_set_spec("cantor(ratio=0.3333333333,lo=1,hi=2)")));
  std::vector<double> grid{0.0, 0.3, 0.6, 0.9, 1.2};
  const auto a = nu_sharp_estimate(base, grid, 12);
  const auto b = nu_sharp_estimate(moved, grid, 12);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(a.samples()[i].value == b.samples()[i].value);
}

TEST_CASE("full interval profile approximates max(1, rho)") {
  auto engine = engine_of("interval(lo=1,hi=2)");
  std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
  const auto prof = nu_sharp_estimate(engine, grid, 16);
  for (double r : grid) CHECK(std::abs(prof.value(r) - std::max(1.0, r)) < 0.1);
}
