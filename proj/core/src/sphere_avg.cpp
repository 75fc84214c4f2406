#include "sphmax/sphere_avg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphmax::sphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHuge = 1e300;

double clamp1(double v) { return std::min(1.0, std::max(-1.0, v)); }

// Normalize an arc so that lo lands in [0, 2*pi).
std::pair<double, double> normalize_arc(double lo, double hi) {
  const double shift = std::floor(lo / kTwoPi) * kTwoPi;
  return {lo - shift, hi - shift};
}

}  // namespace

double eval(const GridFunction& f, const Vec& y, int d) {
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ConstantOne>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, BoxIndicator>) {
          return (horiz_norm2(y, d) <= g.half_width * g.half_width &&
                  std::abs(vert(y, d) - g.center_z) <= g.half_height)
                     ? 1.0
                     : 0.0;
        } else if constexpr (std::is_same_v<T, ShellIndicator>) {
          const double n2 = norm2(y, d);
          return (n2 >= g.r_inner * g.r_inner && n2 <= g.r_outer * g.r_outer &&
                  horiz_norm2(y, d) <= g.cyl_radius * g.cyl_radius)
                     ? 1.0
                     : 0.0;
        } else if constexpr (std::is_same_v<T, BallIndicator>) {
          double n2 = 0.0;
          for (int i = 0; i < d; ++i) n2 += (y[i] - g.center[i]) * (y[i] - g.center[i]);
          return n2 <= g.radius * g.radius ? 1.0 : 0.0;
        } else {
          return g.fn(y);
        }
      },
      f);
}

GridFunction scale_support(const GridFunction& f, double lambda) {
  return std::visit(
      [&](const auto& g) -> GridFunction {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ConstantOne>) {
          return g;
        } else if constexpr (std::is_same_v<T, BoxIndicator>) {
          return BoxIndicator{g.half_width * lambda, g.center_z * lambda,
                              g.half_height * lambda};
        } else if constexpr (std::is_same_v<T, ShellIndicator>) {
          return ShellIndicator{g.r_inner * lambda, g.r_outer * lambda,
                                g.cyl_radius * lambda};
        } else if constexpr (std::is_same_v<T, BallIndicator>) {
          return BallIndicator{{g.center[0] * lambda, g.center[1] * lambda,
                                g.center[2] * lambda},
                               g.radius * lambda};
        } else {
          auto inner = g.fn;
          return GenericFunction{[inner, lambda](const Vec& y) {
            return inner({y[0] / lambda, y[1] / lambda, y[2] / lambda});
          }};
        }
      },
      f);
}

ArcSet ArcSet::full_circle() { return ArcSet{{{0.0, kTwoPi}}}; }
ArcSet ArcSet::empty() { return ArcSet{}; }

ArcSet ArcSet::cos_band(double u, double v, double A, double B) {
  const double R = std::hypot(u, v);
  if (R < 1e-300) return (A <= 0.0 && 0.0 <= B) ? full_circle() : empty();
  const double clo = clamp1(A / R);
  const double chi = clamp1(B / R);
  if (A / R > 1.0 || B / R < -1.0 || clo > chi) return empty();
  const double phi0 = std::atan2(v, u);
  // cos(psi) in [clo, chi]  <=>  psi in [acos(chi), acos(clo)] up to sign
  const double lo = std::acos(chi);
  const double hi = std::acos(clo);
  ArcSet s;
  if (lo <= 0.0 && hi >= std::numbers::pi) {
    s.arcs.emplace_back(phi0, phi0 + kTwoPi);  // whole circle
    return s;
  }
  if (lo == 0.0) {
    // symmetric arc through psi = 0
    s.arcs.emplace_back(phi0 - hi, phi0 + hi);
  } else if (hi >= std::numbers::pi) {
    // symmetric arc through psi = pi
    s.arcs.emplace_back(phi0 + lo, phi0 + kTwoPi - lo);
  } else {
    s.arcs.emplace_back(phi0 + lo, phi0 + hi);
    s.arcs.emplace_back(phi0 - hi, phi0 - lo);
  }
  return s;
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  ArcSet out;
  for (const auto& [a1, b1] : arcs) {
    const auto [lo1, hi1] = normalize_arc(a1, b1);
    for (const auto& [a2, b2] : other.arcs) {
      const auto [lo2raw, hi2raw] = normalize_arc(a2, b2);
      for (int shift = -1; shift <= 1; ++shift) {
        const double lo2 = lo2raw + shift * kTwoPi;
        const double hi2 = hi2raw + shift * kTwoPi;
        const double lo = std::max(lo1, lo2);
        const double hi = std::min(hi1, hi2);
        if (hi > lo) out.arcs.emplace_back(lo, hi);
      }
    }
  }
  return out;
}

double ArcSet::total_length() const {
  double s = 0.0;
  for (const auto& [lo, hi] : arcs) s += hi - lo;
  return s;
}

namespace {

// Arc set of { phi : x + t*omega(phi) in support }, for one ring of the
// rule (d=3, ring data (c, s)) or the circle itself (d=2, c=0, s=1).
// Returns false if the ring misses the support entirely (phi-independent
// rejection), in which case `out` is untouched.
bool ring_arcs(const GridFunction& f, const Vec& x, double t, int d, double ring_cos,
               double ring_sin, ArcSet& out) {
  // horizontal components of x
  const double x1 = x[0];
  const double x2 = d == 3 ? x[1] : 0.0;
  const double xv = vert(x, d);
  const double h2 = x1 * x1 + x2 * x2;

  return std::visit(
      [&](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ConstantOne>) {
          out = ArcSet::full_circle();
          return true;
        } else if constexpr (std::is_same_v<T, BoxIndicator>) {
          ArcSet arcs = ArcSet::full_circle();
          if (d == 2) {
            // vertical: |xv + t sin(phi) - cz| <= hh  (u=0, v=t)
            arcs = arcs.intersect(ArcSet::cos_band(0.0, t, g.center_z - g.half_height - xv,
                                                   g.center_z + g.half_height - xv));
            // horizontal: |x1 + t cos(phi)| <= hw  (u=t, v=0)
            arcs = arcs.intersect(
                ArcSet::cos_band(t, 0.0, -g.half_width - x1, g.half_width - x1));
          } else {
            const double yv = xv + t * ring_cos;
            if (std::abs(yv - g.center_z) > g.half_height) return false;
            // |x' + t s e_phi|^2 <= hw^2
            const double ts = t * ring_sin;
            const double B = g.half_width * g.half_width - h2 - ts * ts;
            arcs = arcs.intersect(ArcSet::cos_band(2 * ts * x1, 2 * ts * x2, -kHuge, B));
          }
          out = std::move(arcs);
          return true;
        } else if constexpr (std::is_same_v<T, ShellIndicator>) {
          // r0^2 <= |x|^2 + t^2 + 2t <x, omega> <= r1^2
          const double base = (d == 2 ? h2 + xv * xv : h2 + xv * xv) + t * t;
          ArcSet arcs = ArcSet::full_circle();
          if (d == 2) {
            const double A = g.r_inner * g.r_inner - base;
            const double B = g.r_outer * g.r_outer - base;
            arcs = arcs.intersect(ArcSet::cos_band(2 * t * x1, 2 * t * xv, A, B));
            arcs = arcs.intersect(
                ArcSet::cos_band(t, 0.0, -g.cyl_radius - x1, g.cyl_radius - x1));
          } else {
            const double vert_term = 2 * t * ring_cos * xv;
            const double A = g.r_inner * g.r_inner - base - vert_term;
            const double B = g.r_outer * g.r_outer - base - vert_term;
            const double ts = t * ring_sin;
            arcs = arcs.intersect(ArcSet::cos_band(2 * ts * x1, 2 * ts * x2, A, B));
            const double Bc = g.cyl_radius * g.cyl_radius - h2 - ts * ts;
            arcs = arcs.intersect(ArcSet::cos_band(2 * ts * x1, 2 * ts * x2, -kHuge, Bc));
          }
          out = std::move(arcs);
          return true;
        } else if constexpr (std::is_same_v<T, BallIndicator>) {
          // |z + t omega|^2 <= r^2 with z = x - center
          const double z1 = x1 - g.center[0];
          const double z2 = d == 3 ? x2 - g.center[1] : 0.0;
          const double zv = xv - vert(g.center, d);
          const double base = z1 * z1 + z2 * z2 + zv * zv + t * t;
          const double B = g.radius * g.radius - base;
          if (d == 2) {
            out = ArcSet::cos_band(2 * t * z1, 2 * t * zv, -kHuge, B);
          } else {
            const double ts = t * ring_sin;
            out = ArcSet::cos_band(2 * ts * z1, 2 * ts * z2, -kHuge,
                                   B - 2 * t * ring_cos * zv);
          }
          return true;
        } else {
          return false;  // generic functions take the node loop
        }
      },
      f);
}

}  // namespace

double spherical_average_nodes(const GridFunction& f, const Vec& x, double t,
                               const QuadratureRule& rule) {
  const int d = rule.d();
  if (rule.node_count() > (std::int64_t(1) << 26))
    throw ResourceCapError("spherical_average: rule too fine for the node loop");
  double acc = 0.0;
  for (std::int64_t i = 0; i < rule.node_count(); ++i) {
    const Vec w = rule.node(i);
    const Vec y{x[0] + t * w[0], x[1] + t * w[1], x[2] + t * w[2]};
    acc += rule.weight(i) * eval(f, y, d);
  }
  return acc;
}

double spherical_average(const GridFunction& f, const Vec& x, double t,
                         const QuadratureRule& rule) {
  if (t <= 0.0) throw std::invalid_argument("spherical_average: t must be > 0");
  const int d = rule.d();
  if (std::holds_alternative<GenericFunction>(f)) return spherical_average_nodes(f, x, t, rule);
  if (std::holds_alternative<ConstantOne>(f)) return 1.0;

  if (d == 2) {
    ArcSet arcs;
    if (!ring_arcs(f, x, t, 2, 0.0, 1.0, arcs)) return 0.0;
    std::int64_t count = 0;
    for (const auto& [lo, hi] : arcs.arcs) count += rule.azimuth_nodes_in(lo, hi);
    return static_cast<double>(count) / static_cast<double>(rule.azimuth_count());
  }
  double acc = 0.0;
  for (std::int64_t i = 0; i < rule.ring_count(); ++i) {
    ArcSet arcs;
    if (!ring_arcs(f, x, t, 3, rule.ring_cos(i), rule.ring_sin(i), arcs)) continue;
    std::int64_t count = 0;
    for (const auto& [lo, hi] : arcs.arcs) count += rule.azimuth_nodes_in(lo, hi);
    if (count)
      acc += rule.ring_weight(i) * static_cast<double>(count) /
             static_cast<double>(rule.azimuth_count());
  }
  return acc;
}

double maximal_function(const GridFunction& f, std::span<const double> radii, const Vec& x,
                        const QuadratureRule& rule) {
  if (radii.empty()) throw std::invalid_argument("maximal_function: empty radius set");
  double best = 0.0;
  for (double t : radii) best = std::max(best, std::abs(spherical_average(f, x, t, rule)));
  return best;
}

}  // namespace sphmax::sphere
