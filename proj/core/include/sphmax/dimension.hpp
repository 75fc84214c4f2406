#pragma once

#include <optional>
#include <vector>

#include "sphmax/entropy.hpp"
#include "sphmax/util.hpp"

namespace sphmax::dim {

inline constexpr double kEnvelopeTol = 0.05;
inline constexpr double kGammaTol = 0.05;

struct BetaEstimate {
  double beta = 0.0;  // clamped to [0, 1]
  double raw = 0.0;   // regression slope before clamping
  SlopeFit fit;
};

// Slope of s_j = log2 sup_{|J|=1} N(E cap J, 2^-j) against j, least squares
// over the top half of scales j in [ceil(j_max/2), j_max].
BetaEstimate beta_estimate(entropy::ScanEngine& engine, int j_max);

struct SpectrumPoint {
  double theta = 0.0;
  double dim = 0.0;       // dim_{A,theta} estimate
  double nu = 0.0;        // -(1-theta) * dim
  bool few_scales = false;
  SlopeFit fit;
};

// Windows |J| = 2^-ceil(theta j) coupled to delta = 2^-j; slope of
// log2 max_J N against (1-theta) j over the top half of scales.
SpectrumPoint assouad_spectrum_estimate(entropy::ScanEngine& engine, double theta, int j_max);

struct SpectrumReport {
  std::vector<SpectrumPoint> points;
};

SpectrumReport spectrum_report(entropy::ScanEngine& engine,
                               const std::vector<double>& theta_grid, int j_max);

// Piecewise-linear representation of the Legendre-Assouad function.
// Closed-form profiles evaluate exactly; sampled ones interpolate the
// monotone clamped grid values and continue with slope 1 past the grid.
class NuSharpProfile {
 public:
  struct Sample {
    double rho = 0.0;
    double value = 0.0;      // clamped, monotone
    double pre_clamp = 0.0;  // raw regression slope
    SlopeFit fit;
  };

  static NuSharpProfile closed_form(double beta, double gamma);

  bool is_closed_form() const { return closed_form_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double rho_star() const { return rho_star_; }
  double envelope_tol() const { return tol_; }
  const std::vector<Sample>& samples() const { return samples_; }

  // nu_sharp at rho; equals beta for rho <= 0.
  double value(double rho) const;

  // max over the grid of (value at midpoint) - (chord), a convexity
  // diagnostic; closed forms report 0.
  double convexity_violation() const;

  // Largest per-scale slope spread among the samples (0 for closed forms).
  double max_spread() const;

 private:
  friend NuSharpProfile nu_sharp_estimate(entropy::ScanEngine&, const std::vector<double>&,
                                          int, double);
  friend double gamma_estimate(const NuSharpProfile&, double);
  friend double rho_star(const NuSharpProfile&, double);

  bool closed_form_ = false;
  double beta_ = 0.0;
  double gamma_ = 0.0;
  double rho_star_ = 0.0;
  double tol_ = kEnvelopeTol;
  std::vector<Sample> samples_;
};

NuSharpProfile nu_sharp_estimate(entropy::ScanEngine& engine,
                                 const std::vector<double>& rho_grid, int j_max,
                                 double envelope_tol = kEnvelopeTol);

// Smallest grid rho with value(rho) - rho <= tol (linear interpolation
// between grid points), at least beta; falls back to 1 when no crossing.
double gamma_estimate(const NuSharpProfile& profile, double tol = kGammaTol);

// Largest rho with value(rho) <= beta + tol, clamped to [0, beta].
double rho_star(const NuSharpProfile& profile, double tol = kEnvelopeTol);

}  // namespace sphmax::dim
