#include "sphmax/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphmax::sphere {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kMaxRings = 1 << 18;
constexpr std::int64_t kMaxVirtualAzimuth = std::int64_t(1) << 40;
}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration from the Chebyshev-based initial guess; symmetric, so
  // only half the nodes are computed.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence up to degree n
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

QuadratureRule QuadratureRule::make(int d, int j) {
  if (d != 2 && d != 3) throw std::invalid_argument("quadrature_rule: d must be 2 or 3");
  if (j < 0) throw std::invalid_argument("quadrature_rule: j must be >= 0");
  const int cap = d == 2 ? kQuadratureJCap2d : kQuadratureJCap3d;
  if (j > cap) throw ResourceCapError("quadrature_rule: j beyond the configured cap");
  if (d == 2) return with_counts(2, std::int64_t(64) << j);
  return with_counts(3, std::int64_t(16) << j, std::int64_t(8) << j);
}

QuadratureRule QuadratureRule::with_counts(int d, std::int64_t m_phi, std::int64_t m_theta) {
  QuadratureRule r;
  r.d_ = d;
  r.m_phi_ = m_phi;
  if (m_phi < 1 || m_phi > kMaxVirtualAzimuth)
    throw ResourceCapError("quadrature: azimuth count out of range");
  if (d == 3) {
    if (m_theta < 1 || m_theta > kMaxRings)
      throw ResourceCapError("quadrature: ring count out of range");
    r.m_theta_ = m_theta;
    std::vector<double> x, w;
    gauss_legendre(static_cast<int>(m_theta), x, w);
    r.polar_cos_ = x;
    r.polar_sin_.resize(x.size());
    r.polar_w_.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.polar_sin_[i] = std::sqrt(std::max(0.0, 1.0 - x[i] * x[i]));
      r.polar_w_[i] = w[i] / 2.0;  // sum of GL weights is 2
    }
  }
  return r;
}

double QuadratureRule::phi(std::int64_t m) const {
  return kTwoPi * (static_cast<double>(m) + 0.5) / static_cast<double>(m_phi_);
}

std::int64_t QuadratureRule::azimuth_nodes_in(double lo, double hi) const {
  if (hi <= lo) return 0;
  if (hi - lo >= kTwoPi) return m_phi_;
  // phi_m = 2*pi*(m + 1/2)/M in [lo, hi]  <=>  m in [M*lo/2pi - 1/2, M*hi/2pi - 1/2]
  const double s = static_cast<double>(m_phi_) / kTwoPi;
  const std::int64_t m_lo = static_cast<std::int64_t>(std::ceil(lo * s - 0.5));
  const std::int64_t m_hi = static_cast<std::int64_t>(std::floor(hi * s - 0.5));
  if (m_hi < m_lo) return 0;
  // wrap into [0, M): the arc may straddle the branch cut
  return m_hi - m_lo + 1;
}

Vec QuadratureRule::node(std::int64_t index) const {
  if (d_ == 2) {
    const double a = phi(index);
    return {std::cos(a), std::sin(a), 0.0};
  }
  const std::int64_t ring = index / m_phi_;
  const std::int64_t m = index % m_phi_;
  const double a = phi(m);
  return {polar_sin_[ring] * std::cos(a), polar_sin_[ring] * std::sin(a), polar_cos_[ring]};
}

double QuadratureRule::weight(std::int64_t index) const {
  if (d_ == 2) return 1.0 / static_cast<double>(m_phi_);
  const std::int64_t ring = index / m_phi_;
  return polar_w_[ring] / static_cast<double>(m_phi_);
}

double QuadratureRule::integrate(const std::function<double(const Vec&)>& f) const {
  if (node_count() > (std::int64_t(1) << 26))
    throw ResourceCapError("integrate: rule too fine for node-by-node evaluation");
  double acc = 0.0;
  for (std::int64_t i = 0; i < node_count(); ++i) acc += weight(i) * f(node(i));
  return acc;
}

}  // namespace sphmax::sphere
