#include "sphmax/weighted_norm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphmax::sphere {

double sphere_area(int d) {
  if (d == 2) return 2.0 * std::numbers::pi;
  if (d == 3) return 4.0 * std::numbers::pi;
  throw std::invalid_argument("sphere_area: d must be 2 or 3");
}

namespace {

// integral of r^{alpha + d - 1} dr over [r0, r1]
double radial_power_integral(double r0, double r1, double alpha, int d) {
  const double e = alpha + d;
  if (e <= 0.0) throw std::invalid_argument("weighted norm: alpha must exceed -d");
  return (std::pow(r1, e) - std::pow(r0, e)) / e;
}

}  // namespace

double shell_weight_integral(double r0, double r1, double alpha, int d) {
  return sphere_area(d) * radial_power_integral(r0, r1, alpha, d);
}

double weighted_norm_p(const PolarGridFn& g, double p, double alpha, int d) {
  if (g.radial_edges.size() < 2) return 0.0;
  const std::size_t cells = g.radial_edges.size() - 1;
  if (g.values.size() != cells * static_cast<std::size_t>(g.n_dirs))
    throw std::invalid_argument("weighted_norm: value table does not match the grid");
  double acc = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    const double w = radial_power_integral(g.radial_edges[k], g.radial_edges[k + 1], alpha, d);
    double dir_acc = 0.0;
    for (std::int64_t i = 0; i < g.n_dirs; ++i) {
      const double v = std::abs(g.values[k * g.n_dirs + i]);
      dir_acc += std::pow(v, p);
    }
    acc += w * dir_acc / static_cast<double>(g.n_dirs);
  }
  return acc * sphere_area(d);
}

double weighted_norm(const PolarGridFn& g, double p, double alpha, int d) {
  return std::pow(weighted_norm_p(g, p, alpha, d), 1.0 / p);
}

}  // namespace sphmax::sphere
