#include "sphmax/pieces.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphmax::sphere {

namespace {

constexpr double kPi = std::numbers::pi;

// 16-point Gauss-Legendre on [a, b].
template <class F>
double integrate_gl16(double a, double b, F&& f) {
  static const double xs[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double ws[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                               0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
  return acc * half;
}

double uniform(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

KnappConfig KnappConfig::small_k(int d, int j, int k, double a, double eps) {
  KnappConfig c{d, j, k, a, eps, KnappCase::SmallK};
  c.validate();
  return c;
}

KnappConfig KnappConfig::large_k(int d, int j, int k, double a, double eps) {
  KnappConfig c{d, j, k, a, eps, KnappCase::LargeK};
  c.validate();
  return c;
}

void KnappConfig::validate() const {
  if (d != 2 && d != 3) throw std::invalid_argument("knapp: d must be 2 or 3");
  if (!(k > 0 && k <= j)) throw std::invalid_argument("knapp: need 0 < k <= j");
  if (!(a >= 1.0 && a <= 2.0)) throw std::invalid_argument("knapp: anchor a must be in [1,2]");
  if (!(eps > 0.0)) throw std::invalid_argument("knapp: eps must be > 0");
  if (knapp_case == KnappCase::SmallK) {
    if (2 * k > j) throw std::invalid_argument("knapp: small-k case needs k <= j/2");
  } else {
    if (2 * k <= j) throw std::invalid_argument("knapp: large-k case needs k > j/2");
    if (eps > 1e-2) throw std::invalid_argument("knapp: large-k case needs eps <= 1e-2");
  }
}

bool ShellCapRegion::contains(const Vec& x) const {
  Vec z{x[0] - center[0], x[1] - center[1], x[2] - center[2]};
  const double n2 = norm2(z, d);
  return n2 >= r0 * r0 && n2 <= r1 * r1 && horiz_norm2(z, d) <= horiz_cap * horiz_cap;
}

double ShellCapRegion::volume() const {
  if (d == 2) {
    // area element rs dtheta drs; both polar caps |sin(theta)| <= cap/rs
    return 4.0 * integrate_gl16(r0, r1, [&](double rs) {
      return std::asin(std::min(1.0, horiz_cap / rs)) * rs;
    });
  }
  // rs^2 drs times solid angle 2 * 2pi (1 - cos(theta_max))
  return 4.0 * kPi * integrate_gl16(r0, r1, [&](double rs) {
    const double s = std::min(1.0, horiz_cap / rs);
    return (1.0 - std::sqrt(std::max(0.0, 1.0 - s * s))) * rs * rs;
  });
}

Vec ShellCapRegion::sample(std::mt19937_64& rng) const {
  for (int tries = 0; tries < 1000; ++tries) {
    // radius with density rs^{d-1}
    const double u = uniform(rng);
    const double rs = d == 2 ? std::sqrt(r0 * r0 + u * (r1 * r1 - r0 * r0))
                             : std::cbrt(r0 * r0 * r0 + u * (r1 * r1 * r1 - r0 * r0 * r0));
    const bool top = uniform(rng) < 0.5;
    const double smax_wide = std::min(1.0, horiz_cap / r0);
    if (d == 2) {
      const double th_max = std::asin(smax_wide);
      const double th = th_max * (2.0 * uniform(rng) - 1.0);
      if (std::abs(std::sin(th)) > horiz_cap / rs) continue;  // exact cap at this radius
      const double vertical = rs * std::cos(th) * (top ? 1.0 : -1.0);
      return {center[0] + rs * std::sin(th), center[1] + vertical, 0.0};
    }
    const double cmin = std::sqrt(std::max(0.0, 1.0 - smax_wide * smax_wide));
    const double c = cmin + (1.0 - cmin) * uniform(rng);  // uniform in cos(theta)
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    if (s > horiz_cap / rs) continue;
    const double phi = 2.0 * kPi * uniform(rng);
    const double vertical = rs * c * (top ? 1.0 : -1.0);
    return {center[0] + rs * s * std::cos(phi), center[1] + rs * s * std::sin(phi),
            center[2] + vertical};
  }
  throw std::runtime_error("ShellCapRegion::sample: rejection loop failed");
}

bool TubeRegion::contains(const Vec& x) const {
  const double h2 = horiz_norm2(x, d);
  return h2 >= hr0 * hr0 && h2 <= hr1 * hr1 && std::abs(vert(x, d) - z_center) <= half_h;
}

double TubeRegion::volume() const {
  const double cross = d == 2 ? 2.0 * (hr1 - hr0) : kPi * (hr1 * hr1 - hr0 * hr0);
  return cross * 2.0 * half_h;
}

Vec TubeRegion::sample(std::mt19937_64& rng) const {
  const double z = z_center + half_h * (2.0 * uniform(rng) - 1.0);
  if (d == 2) {
    const double sign = uniform(rng) < 0.5 ? -1.0 : 1.0;
    const double h = hr0 + (hr1 - hr0) * uniform(rng);
    return {sign * h, z, 0.0};
  }
  const double u = uniform(rng);
  const double h = std::sqrt(hr0 * hr0 + u * (hr1 * hr1 - hr0 * hr0));
  const double phi = 2.0 * kPi * uniform(rng);
  return {h * std::cos(phi), h * std::sin(phi), z};
}

bool BoxRegion::contains(const Vec& y) const {
  return horiz_norm2(y, d) <= half_w * half_w && std::abs(vert(y, d) - center_z) <= half_h;
}

double BoxRegion::volume() const {
  const double cross = d == 2 ? 2.0 * half_w : kPi * half_w * half_w;
  return cross * 2.0 * half_h;
}

Vec BoxRegion::sample(std::mt19937_64& rng) const {
  const double z = center_z + half_h * (2.0 * uniform(rng) - 1.0);
  if (d == 2) return {half_w * (2.0 * uniform(rng) - 1.0), z, 0.0};
  for (int tries = 0; tries < 1000; ++tries) {
    const double u = 2.0 * uniform(rng) - 1.0;
    const double v = 2.0 * uniform(rng) - 1.0;
    if (u * u + v * v <= 1.0) return {half_w * u, half_w * v, z};
  }
  throw std::runtime_error("BoxRegion::sample: rejection loop failed");
}

SmallKPieces knapp_small_k(const KnappConfig& config) {
  config.validate();
  if (config.knapp_case != KnappCase::SmallK)
    throw std::invalid_argument("knapp_small_k: config is not the small-k case");
  SmallKPieces out;
  out.config = config;
  const double inv_eps = 1.0 / config.eps;
  const double hw = inv_eps * std::exp2(config.k - config.j);
  const double hh = inv_eps * std::exp2(-config.j);
  out.f_q = BoxIndicator{hw, config.a, hh};
  out.q_box = BoxRegion{config.d, hw, config.a, hh};
  return out;
}

ShellCapRegion SmallKPieces::u_piece(double t) const {
  const double delta = std::exp2(-config.j);
  ShellCapRegion r;
  r.d = config.d;
  r.center = {0.0, 0.0, 0.0};
  r.center[config.d - 1] = config.a;
  r.r0 = t - config.eps * delta;
  r.r1 = t + config.eps * delta;
  r.horiz_cap = std::exp2(-config.k);
  return r;
}

LargeKPieces knapp_large_k(const KnappConfig& config) {
  config.validate();
  if (config.knapp_case != KnappCase::LargeK)
    throw std::invalid_argument("knapp_large_k: config is not the large-k case");
  LargeKPieces out;
  out.config = config;
  const double delta = std::exp2(-config.j);
  const double cap = std::exp2(config.k - config.j) / config.eps;
  out.g_u = ShellIndicator{config.a - delta, config.a + delta, cap};
  out.u_support =
      ShellCapRegion{config.d, {0.0, 0.0, 0.0}, config.a - delta, config.a + delta, cap};
  return out;
}

TubeRegion LargeKPieces::q_piece(double t) const {
  TubeRegion r;
  r.d = config.d;
  r.hr0 = config.eps * std::exp2(-config.k - 1);
  r.hr1 = config.eps * std::exp2(-config.k);
  r.z_center = config.a - t;
  r.half_h = config.eps * std::exp2(-config.j);
  return r;
}

InclusionReport geometry_inclusion_test(const KnappConfig& config, double t,
                                        std::uint64_t n_samples, std::uint64_t seed) {
  config.validate();
  InclusionReport rep;
  rep.worst_horizontal = 1e300;
  rep.worst_vertical = 1e300;
  std::mt19937_64 rng(seed);
  const int d = config.d;
  const double w_ball = std::exp2(config.k - config.j);

  if (config.knapp_case == KnappCase::SmallK) {
    SmallKPieces pieces = knapp_small_k(config);
    ShellCapRegion u = pieces.u_piece(t);
    const double hw = 1.0 / config.eps * std::exp2(config.k - config.j);
    const double hh = 1.0 / config.eps * std::exp2(-config.j);
    for (std::uint64_t i = 0; i < n_samples; ++i) {
      const Vec x = u.sample(rng);
      // w' uniform in the (d-1)-ball of radius 2^{k-j}
      double w1 = 0.0, w2 = 0.0;
      if (d == 2) {
        w1 = w_ball * (2.0 * uniform(rng) - 1.0);
      } else {
        for (int tries = 0;; ++tries) {
          const double u1 = 2.0 * uniform(rng) - 1.0;
          const double u2 = 2.0 * uniform(rng) - 1.0;
          if (u1 * u1 + u2 * u2 <= 1.0) {
            w1 = w_ball * u1;
            w2 = w_ball * u2;
            break;
          }
          if (tries > 1000) throw std::runtime_error("inclusion test: rejection failed");
        }
      }
      // theta_{x, w'} = (-x' + w', a - x_d) / |...|
      const double h1 = -x[0] + w1;
      const double h2 = d == 3 ? -x[1] + w2 : 0.0;
      const double v = config.a - vert(x, d);
      const double nrm = std::sqrt(h1 * h1 + h2 * h2 + v * v);
      Vec y{x[0] + t * h1 / nrm, d == 3 ? x[1] + t * h2 / nrm : 0.0, 0.0};
      y[d - 1] = vert(x, d) + t * v / nrm;
      const double mh = hw - std::sqrt(horiz_norm2(y, d));
      const double mv = hh - std::abs(vert(y, d) - config.a);
      rep.worst_horizontal = std::min(rep.worst_horizontal, mh);
      rep.worst_vertical = std::min(rep.worst_vertical, mv);
      if (mh < 0.0 || mv < 0.0) ++rep.failures;
      ++rep.samples;
    }
    return rep;
  }

  LargeKPieces pieces = knapp_large_k(config);
  TubeRegion q = pieces.q_piece(t);
  const double delta = std::exp2(-config.j);
  const double omega_cap = config.eps * std::exp2(config.k - config.j);
  const double shell_cap = std::exp2(config.k - config.j) / config.eps;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const Vec x = q.sample(rng);
    double o1 = 0.0, o2 = 0.0;
    if (d == 2) {
      o1 = omega_cap * (2.0 * uniform(rng) - 1.0);
    } else {
      for (int tries = 0;; ++tries) {
        const double u1 = 2.0 * uniform(rng) - 1.0;
        const double u2 = 2.0 * uniform(rng) - 1.0;
        if (u1 * u1 + u2 * u2 <= 1.0) {
          o1 = omega_cap * u1;
          o2 = omega_cap * u2;
          break;
        }
        if (tries > 1000) throw std::runtime_error("inclusion test: rejection failed");
      }
    }
    const double od = std::sqrt(std::max(0.0, 1.0 - o1 * o1 - o2 * o2));
    Vec y{x[0] + t * o1, d == 3 ? x[1] + t * o2 : 0.0, 0.0};
    y[d - 1] = vert(x, d) + t * od;
    const double r = std::sqrt(norm2(y, d));
    const double m_shell = std::min(r - (config.a - delta), (config.a + delta) - r);
    const double m_h = shell_cap - std::sqrt(horiz_norm2(y, d));
    rep.worst_vertical = std::min(rep.worst_vertical, m_shell);
    rep.worst_horizontal = std::min(rep.worst_horizontal, m_h);
    if (m_shell < 0.0 || m_h < 0.0) ++rep.failures;
    ++rep.samples;
  }
  return rep;
}

std::vector<double> tau_net(std::span<const double> radii_sorted, double delta) {
  std::vector<double> net;
  for (double t : radii_sorted) {
    if (net.empty() || t - net.back() >= delta) net.push_back(t);
  }
  return net;
}

}  // namespace sphmax::sphere
