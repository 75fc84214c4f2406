#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sphmax/gridfn.hpp"
#include "sphmax/quadrature.hpp"

namespace sphmax::sphere {

enum class KnappCase { SmallK, LargeK };

// Parameters of the two extremizer constructions.  SmallK requires
// k <= j/2; LargeK requires j/2 < k <= j and eps <= 1e-2.
struct KnappConfig {
  int d = 2;
  int j = 0;
  int k = 0;
  double a = 1.5;  // anchor radius in [1, 2]
  double eps = 0.015625;
  KnappCase knapp_case = KnappCase::SmallK;

  static KnappConfig small_k(int d, int j, int k, double a, double eps = 0.015625);
  static KnappConfig large_k(int d, int j, int k, double a, double eps = 1e-2);
  void validate() const;
};

// Spherical-shell segment around `center`: shell radii [r0, r1] cut to
// |x' | <= horiz_cap (both polar caps).  Covers U(a,t) and the large-k
// target set around the origin.
struct ShellCapRegion {
  int d = 2;
  Vec center{0.0, 0.0, 0.0};
  double r0 = 0.0, r1 = 0.0;
  double horiz_cap = 0.0;

  bool contains(const Vec& x) const;
  double volume() const;             // exact up to 1d quadrature in the radius
  Vec sample(std::mt19937_64& rng) const;  // uniform w.r.t. Lebesgue measure
};

// Product region {hr0 <= |x'| <= hr1} x {|x_d - z_center| <= half_h}; the
// large-k observation pieces Q(a,t).
struct TubeRegion {
  int d = 2;
  double hr0 = 0.0, hr1 = 0.0;
  double z_center = 0.0;
  double half_h = 0.0;

  bool contains(const Vec& x) const;
  double volume() const;
  Vec sample(std::mt19937_64& rng) const;
};

// Axis-aligned box {|y'| <= half_w} x {|y_d - center_z| <= half_h}.
struct BoxRegion {
  int d = 2;
  double half_w = 0.0;
  double center_z = 0.0;
  double half_h = 0.0;

  bool contains(const Vec& y) const;
  double volume() const;
  Vec sample(std::mt19937_64& rng) const;
};

struct SmallKPieces {
  KnappConfig config;
  GridFunction f_q;     // indicator of Q(a)
  BoxRegion q_box;      // its support, for norms
  ShellCapRegion u_piece(double t) const;  // U(a, t)
};

struct LargeKPieces {
  KnappConfig config;
  GridFunction g_u;          // indicator of the shell neighborhood around 0
  ShellCapRegion u_support;  // its support
  TubeRegion q_piece(double t) const;  // script-Q(a, t)
};

SmallKPieces knapp_small_k(const KnappConfig& config);
LargeKPieces knapp_large_k(const KnappConfig& config);

struct InclusionReport {
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  // smallest slack seen in each membership inequality (negative = failure)
  double worst_horizontal = 0.0;
  double worst_vertical = 0.0;
};

// SmallK: samples x in U(a,t) and |w'| <= 2^{k-j}, forms the unit vector
// through (-x'+w', a-x_d) and checks x + t theta in Q(a) exactly.
// LargeK: samples x in Q(a,t) and |omega'| <= eps 2^{k-j}, checks
// x + t omega lands in the shell neighborhood.
InclusionReport geometry_inclusion_test(const KnappConfig& config, double t,
                                        std::uint64_t n_samples, std::uint64_t seed);

// Greedy maximal delta-separated subset (Euclidean separation on the
// multiplicative radii), left to right.
std::vector<double> tau_net(std::span<const double> radii_sorted, double delta);

}  // namespace sphmax::sphere
