#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "sphmax/util.hpp"

namespace sphmax::sphere {

// Point in R^d, d in {2,3}: components 0..d-2 are the horizontal block x',
// component d-1 is the vertical coordinate x_d.  For d=2 slot 2 is unused.
using Vec = std::array<double, 3>;

inline double horiz_norm2(const Vec& v, int d) {
  return d == 2 ? v[0] * v[0] : v[0] * v[0] + v[1] * v[1];
}
inline double vert(const Vec& v, int d) { return v[d - 1]; }
inline double norm2(const Vec& v, int d) { return horiz_norm2(v, d) + vert(v, d) * vert(v, d); }

// Discretization of the normalized surface measure on S^{d-1}.
//   d=2: M = 64 * 2^j equally spaced angles, uniform weights.
//   d=3: Gauss-Legendre in the polar cosine (8 * 2^j nodes) times a uniform
//        azimuth grid (16 * 2^j), weights normalized to sum to one.
// Nodes are never materialized; evaluation iterates rings (d=3) or counts
// azimuth nodes inside arcs analytically.
class QuadratureRule {
 public:
  static QuadratureRule make(int d, int j);
  // Direct node-count constructor for internal use; bypasses the j-based
  // sizing but not the hard budget.
  static QuadratureRule with_counts(int d, std::int64_t m_phi, std::int64_t m_theta = 0);

  int d() const { return d_; }
  std::int64_t azimuth_count() const { return m_phi_; }
  std::int64_t ring_count() const { return d_ == 2 ? 1 : m_theta_; }
  std::int64_t node_count() const { return d_ == 2 ? m_phi_ : m_theta_ * m_phi_; }

  // azimuth angle of node m (equally spaced with half-step offset)
  double phi(std::int64_t m) const;
  // polar data for ring i (d=3): cos(theta), sin(theta), ring weight
  double ring_cos(std::int64_t i) const { return polar_cos_[i]; }
  double ring_sin(std::int64_t i) const { return polar_sin_[i]; }
  double ring_weight(std::int64_t i) const { return polar_w_[i]; }

  // number of azimuth nodes with phi in [lo, hi] (radians, hi - lo <= 2*pi)
  std::int64_t azimuth_nodes_in(double lo, double hi) const;

  Vec node(std::int64_t index) const;   // materialize one node
  double weight(std::int64_t index) const;

  // quadrature of an arbitrary function over the sphere (test/support path)
  double integrate(const std::function<double(const Vec&)>& f) const;

 private:
  int d_ = 2;
  std::int64_t m_phi_ = 0;
  std::int64_t m_theta_ = 0;
  std::vector<double> polar_cos_, polar_sin_, polar_w_;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

inline constexpr int kQuadratureJCap2d = 14;
inline constexpr int kQuadratureJCap3d = 10;

}  // namespace sphmax::sphere
