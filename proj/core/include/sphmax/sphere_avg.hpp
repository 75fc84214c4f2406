#pragma once

#include <span>
#include <vector>

#include "sphmax/gridfn.hpp"
#include "sphmax/quadrature.hpp"

namespace sphmax::sphere {

// A_t f(x) = sum_m w_m f(x + t w_m) over the rule's nodes.  Indicator
// supports are evaluated by counting azimuth nodes inside exactly computed
// arcs, so the result equals the full node sum at any resolution without
// materializing nodes.  GenericFunction falls back to the node loop.
double spherical_average(const GridFunction& f, const Vec& x, double t,
                         const QuadratureRule& rule);

// Node-by-node reference path (identical result by construction; used as an
// oracle for the arc computation and for generic functions).
double spherical_average_nodes(const GridFunction& f, const Vec& x, double t,
                               const QuadratureRule& rule);

// M_E f(x) = max over the sampled radii (multiplicative values).
double maximal_function(const GridFunction& f, std::span<const double> radii, const Vec& x,
                        const QuadratureRule& rule);

// Angular arcs on the circle, as [lo, hi] intervals in radians (lo may be
// negative, hi may exceed 2*pi; hi - lo <= 2*pi).
struct ArcSet {
  std::vector<std::pair<double, double>> arcs;

  static ArcSet full_circle();
  static ArcSet empty();
  // { phi : A <= u cos(phi) + v sin(phi) <= B }
  static ArcSet cos_band(double u, double v, double A, double B);
  ArcSet intersect(const ArcSet& other) const;
  double total_length() const;
};

}  // namespace sphmax::sphere
