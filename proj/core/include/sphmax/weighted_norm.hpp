#pragma once

#include <functional>
#include <vector>

#include "sphmax/quadrature.hpp"

namespace sphmax::sphere {

// Function on a polar grid: piecewise constant in the radius over the given
// cell edges, sampled at the quadrature rule's directions.  The radial
// power r^{alpha + d - 1} is integrated exactly per cell, so the norm of a
// cellwise-constant radial function is exact.
struct PolarGridFn {
  std::vector<double> radial_edges;  // increasing, size K+1
  // values[k * n_dirs + i]: value on cell k in direction i
  std::vector<double> values;
  std::int64_t n_dirs = 1;  // 1 for radial functions
};

// integral of |g|^p |x|^alpha over the grid's support; alpha > -d.
double weighted_norm_p(const PolarGridFn& g, double p, double alpha, int d);

// ( integral )^{1/p}
double weighted_norm(const PolarGridFn& g, double p, double alpha, int d);

// Exact integral of |x|^alpha over the radial shell [r0, r1] (full sphere),
// i.e. the L^p(w_alpha) norm of the shell indicator raised to p.
double shell_weight_integral(double r0, double r1, double alpha, int d);

// Surface area of S^{d-1}: 2*pi (d=2), 4*pi (d=3).
double sphere_area(int d);

}  // namespace sphmax::sphere
