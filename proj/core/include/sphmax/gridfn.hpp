#pragma once

#include <functional>
#include <variant>

#include "sphmax/quadrature.hpp"

namespace sphmax::sphere {

// Test functions are exact indicator predicates (or arbitrary callables);
// the function itself is never discretized, so quadrature is the only
// numerical error in spherical averages.

struct ConstantOne {};

// {|y'| <= half_width, |y_d - center_z| <= half_height}
struct BoxIndicator {
  double half_width = 0.0;
  double center_z = 0.0;
  double half_height = 0.0;
};

// {r_inner <= |y| <= r_outer, |y'| <= cyl_radius}, centered at the origin
struct ShellIndicator {
  double r_inner = 0.0;
  double r_outer = 0.0;
  double cyl_radius = 0.0;
};

// {|y - center| <= radius}
struct BallIndicator {
  Vec center{0.0, 0.0, 0.0};
  double radius = 0.0;
};

struct GenericFunction {
  std::function<double(const Vec&)> fn;
};

using GridFunction =
    std::variant<ConstantOne, BoxIndicator, ShellIndicator, BallIndicator, GenericFunction>;

// Pointwise evaluation (1/0 for the indicators).
double eval(const GridFunction& f, const Vec& y, int d);

// f(. / lambda): scales indicator supports exactly.
GridFunction scale_support(const GridFunction& f, double lambda);

}  // namespace sphmax::sphere
