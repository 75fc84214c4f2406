#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphmax/dimension.hpp"

namespace sphmax::typeset {

inline constexpr double kBoundaryTol = 1e-6;
inline constexpr double kDefaultPMax = 4.0;

// Generalized inverse of nu_sharp: sup { rho >= 0 : value(rho) <= s }.
// Requires s >= beta - tol.
double dagger(const dim::NuSharpProfile& profile, double s);

double p_beta(double beta, int d);
double p_gamma(double gamma, int d);

// U(p) = (d-1)(p-1) - beta,  L(p) = (d-1)(p-2) - dagger((d-1)(p-1)).
double U_of(double p, double beta, int d);
double L_of(double p, const dim::NuSharpProfile& profile, int d);

// Theta(p, alpha) = max{ alpha + beta, nu_sharp((d-1)(p-2) - alpha) }.
double theta_fn(double p, double alpha, const dim::NuSharpProfile& profile, int d);

// Margins of the two region descriptions; membership <=> margin >= 0.
double theta_margin(double p, double alpha, const dim::NuSharpProfile& profile, int d);
double explicit_margin(double p, double alpha, const dim::NuSharpProfile& profile, int d);

// Implicit form: (d-1)(p-1) >= Theta(p, alpha) - tol.
bool contains(double p, double alpha, const dim::NuSharpProfile& profile, int d,
              double tol = kBoundaryTol);

// -(d-1) <= alpha <= (d-1)(p-1) - beta.
bool necessary_conditions(double p, double alpha, double beta, int d);

struct BoundarySample {
  double inv_p = 0.0;
  double lower = 0.0;  // L(p)/p
  double upper = 0.0;  // U(p)/p
  // region uncertainty from the estimator envelope, for sampled profiles
  std::optional<double> lower_inner;
  std::optional<double> lower_outer;
};

struct TypeSetRegion {
  int d = 2;
  dim::NuSharpProfile profile;
  double p_beta = 0.0;
  double p_gamma = 0.0;
  std::vector<BoundarySample> boundary;
};

TypeSetRegion region_boundary(const dim::NuSharpProfile& profile, int d,
                              const std::vector<double>& p_grid);

std::vector<double> default_p_grid(const dim::NuSharpProfile& profile, int d,
                                   double p_max = kDefaultPMax, int n = 257);

struct EquivalenceReport {
  std::size_t checked = 0;
  std::size_t excluded = 0;       // inside the boundary band
  std::size_t disagreements = 0;
  std::vector<std::pair<double, double>> examples;  // (p, alpha) of failures
};

// Cross-validates the explicit (L,U) description against the Theta
// predicate on an n x n grid in (1/p, alpha/p), skipping a band around the
// boundary curves.
EquivalenceReport verify_equivalence(const dim::NuSharpProfile& profile, int d, int n_grid,
                                     double band = kBoundaryTol);

// L(p) for a finite union of Assouad-regular components (beta_i, gamma_i).
double union_L(double p, const std::vector<std::pair<double, double>>& components, int d);

struct ConvexityReport {
  std::size_t members = 0;
  std::size_t pairs_checked = 0;
  std::size_t failures = 0;
  std::vector<std::array<double, 4>> examples;  // (x1,y1,x2,y2) of failures
};

// Midpoint-membership convexity of the region indicator on an nx x ny grid
// in (1/p, alpha/p): for every pair of member grid points, the grid point
// nearest their midpoint must be a member, unless it falls within a small
// band around the boundary curves.
ConvexityReport convexity_check(const dim::NuSharpProfile& profile, int d, int nx, int ny);

}  // namespace sphmax::typeset
