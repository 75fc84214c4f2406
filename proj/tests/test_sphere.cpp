#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sphmax/pieces.hpp"
#include "sphmax/sphere_avg.hpp"
#include "sphmax/weighted_norm.hpp"

using namespace sphmax;
using namespace sphmax::sphere;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("quadrature rule construction and moments") {
  SUBCASE("d=2, j=0: 64 uniform nodes") {
    const auto rule = QuadratureRule::make(2, 0);
    CHECK(rule.node_count() == 64);
    CHECK(rule.weight(7) == doctest::Approx(1.0 / 64.0));
    double wsum = 0.0, m2 = 0.0;
    for (std::int64_t i = 0; i < rule.node_count(); ++i) {
      wsum += rule.weight(i);
      const Vec w = rule.node(i);
      CHECK(std::abs(w[0] * w[0] + w[1] * w[1] - 1.0) < 1e-12);
      m2 += rule.weight(i) * w[0] * w[0];
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(0.5).epsilon(1e-10));  // moment of omega_1^2 on S^1
  }
  SUBCASE("d=3 moments") {
    const auto rule = QuadratureRule::make(3, 0);
    CHECK(rule.node_count() == 8 * 16);
    double wsum = 0.0, m2 = 0.0, mz = 0.0;
    for (std::int64_t i = 0; i < rule.node_count(); ++i) {
      wsum += rule.weight(i);
      const Vec w = rule.node(i);
      m2 += rule.weight(i) * w[0] * w[0];
      mz += rule.weight(i) * w[2] * w[2];
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mz == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(m2 == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }
  SUBCASE("caps") {
    CHECK_THROWS_AS(QuadratureRule::make(2, 15), ResourceCapError);
    CHECK_THROWS_AS(QuadratureRule::make(3, 11), ResourceCapError);
  }
}

TEST_CASE("gauss-legendre nodes match known values") {
  std::vector<double> x, w;
  gauss_legendre(2, x, w);
  CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(w[0] == doctest::Approx(1.0));
  gauss_legendre(3, x, w);
  CHECK(x[2] == doctest::Approx(std::sqrt(0.6)));
  CHECK(w[1] == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("arc counting equals the node loop") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int d : {2, 3}) {
    const auto rule = d == 2 ? QuadratureRule::make(2, 3) : QuadratureRule::make(3, 2);
    for (int i = 0; i < 200; ++i) {
      const Vec x{0.4 * (u01(rng) - 0.5), d == 3 ? 0.4 * (u01(rng) - 0.5) : 0.0,
                  0.0};
      Vec xx = x;
      xx[d - 1] = 2.0 * u01(rng) - 0.5;
      const double t = 0.5 + 1.5 * u01(rng);
      GridFunction f;
      switch (i % 3) {
        case 0:
          f = BoxIndicator{0.1 + 0.5 * u01(rng), 1.0 + u01(rng), 0.05 + 0.3 * u01(rng)};
          break;
        case 1:
          f = ShellIndicator{0.8 + 0.4 * u01(rng), 1.3 + 0.4 * u01(rng),
                             0.2 + 0.8 * u01(rng)};
          break;
        default:
          f = BallIndicator{{0.3 * u01(rng), 0.0, 1.0 + 0.5 * u01(rng)},
                            0.2 + 0.6 * u01(rng)};
          break;
      }
      const double fast = spherical_average(f, xx, t, rule);
      const double slow = spherical_average_nodes(f, xx, t, rule);
      CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
    }
  }
}

TEST_CASE("spherical average basics") {
  const auto rule = QuadratureRule::make(2, 4);
  SUBCASE("normalization") {
    CHECK(spherical_average(ConstantOne{}, {0.3, 0.4, 0.0}, 1.7, rule) == 1.0);
  }
  SUBCASE("radial indicator from the center") {
    const GridFunction ball = BallIndicator{{0.0, 0.0, 0.0}, 1.0};
    CHECK(spherical_average(ball, {0.0, 0.0, 0.0}, 0.5, rule) == doctest::Approx(1.0));
    CHECK(spherical_average(ball, {0.0, 0.0, 0.0}, 1.0, rule) == doctest::Approx(1.0));
    CHECK(spherical_average(ball, {0.0, 0.0, 0.0}, 1.01, rule) == doctest::Approx(0.0));
  }
  SUBCASE("half-plane via generic function gives 1/2") {
    const GridFunction half = GenericFunction{[](const Vec& y) { return y[0] > 0 ? 1.0 : 0.0; }};
    CHECK(spherical_average(half, {0.0, 0.0, 0.0}, 1.0, rule) == doctest::Approx(0.5));
  }
}

TEST_CASE("rotation equivariance") {
  SUBCASE("d=2: rotation by node spacing is exact for arbitrary predicates") {
    const auto rule = QuadratureRule::make(2, 2);
    const double step = 2.0 * kPi / static_cast<double>(rule.node_count());
    const double c = std::cos(17 * step), s = std::sin(17 * step);
    // f rotated by 17 node steps, x rotated accordingly
    const GridFunction f = GenericFunction{[](const Vec& y) {
      return (y[0] > 0.2 && std::abs(y[1] - 1.0) < 0.4) ? 1.0 : 0.0;
    }};
    const GridFunction frot = GenericFunction{[c, s](const Vec& y) {
      const Vec z{c * y[0] + s * y[1], -s * y[0] + c * y[1], 0.0};
      return (z[0] > 0.2 && std::abs(z[1] - 1.0) < 0.4) ? 1.0 : 0.0;
    }};
    const Vec x{0.3, -0.2, 0.0};
    const Vec xrot{c * x[0] - s * x[1], s * x[0] + c * x[1], 0.0};
    CHECK(spherical_average(f, x, 1.3, rule) == spherical_average(frot, xrot, 1.3, rule));
  }
  SUBCASE("d=2: arbitrary rotations via arc counting at high resolution") {
    const auto rule = QuadratureRule::with_counts(2, std::int64_t(1) << 26);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double ang = 2.0 * kPi * u01(rng);
      const double c = std::cos(ang), s = std::sin(ang);
      const Vec center{0.4, 0.9, 0.0};
      const double r = 0.3 + 0.4 * u01(rng);
      const Vec x{0.2, -0.1, 0.0};
      // rotate both the ball center and the evaluation point
      const Vec crot{c * center[0] - s * center[1], s * center[0] + c * center[1], 0.0};
      const Vec xrot{c * x[0] - s * x[1], s * x[0] + c * x[1], 0.0};
      const double base =
          spherical_average(BallIndicator{center, r}, x, 1.1, rule);
      const double moved =
          spherical_average(BallIndicator{crot, r}, xrot, 1.1, rule);
      CHECK(std::abs(moved - base) < 1e-6);
    }
  }
  SUBCASE("d=3: smooth integrand, random rotation about the vertical axis") {
    const auto rule = QuadratureRule::make(3, 3);
    const double ang = 1.2345;
    const double c = std::cos(ang), s = std::sin(ang);
    const GridFunction f =
        GenericFunction{[](const Vec& y) { return std::exp(0.3 * y[0] - 0.2 * y[2]); }};
    const GridFunction frot = GenericFunction{[c, s](const Vec& y) {
      const Vec z{c * y[0] + s * y[1], -s * y[0] + c * y[1], y[2]};
      return std::exp(0.3 * z[0] - 0.2 * z[2]);
    }};
    const Vec x{0.2, 0.1, 0.4};
    const Vec xrot{c * x[0] - s * x[1], s * x[0] + c * x[1], x[2]};
    CHECK(spherical_average(frot, xrot, 1.5, rule) ==
          doctest::Approx(spherical_average(f, x, 1.5, rule)).epsilon(1e-9));
  }
}

TEST_CASE("maximal function") {
  const auto rule = QuadratureRule::make(2, 4);
  const GridFunction annulus = ShellIndicator{1.0, 1.1, 10.0};
  const std::vector<double> radii{0.5, 1.05, 1.9};
  SUBCASE("single radius reduces to the average") {
    const std::vector<double> one{1.05};
    CHECK(maximal_function(annulus, one, {0.0, 0.0, 0.0}, rule) ==
          spherical_average(annulus, {0.0, 0.0, 0.0}, 1.05, rule));
  }
  SUBCASE("thin annulus from the center") {
    CHECK(maximal_function(annulus, radii, {0.0, 0.0, 0.0}, rule) == doctest::Approx(1.0));
  }
  SUBCASE("monotone under adding radii") {
    const std::vector<double> fewer{0.5, 1.9};
    CHECK(maximal_function(annulus, fewer, {0.0, 0.0, 0.0}, rule) <=
          maximal_function(annulus, radii, {0.0, 0.0, 0.0}, rule));
  }
}

TEST_CASE("weighted norms in polar coordinates") {
  SUBCASE("unit disk, alpha=0, p=1: area pi") {
    PolarGridFn g;
    g.radial_edges = {0.0, 1.0};
    g.values = {1.0};
    CHECK(weighted_norm_p(g, 1.0, 0.0, 2) == doctest::Approx(kPi).epsilon(1e-9));
  }
  SUBCASE("unit disk, alpha=-1, p=1: 2 pi") {
    PolarGridFn g;
    g.radial_edges = {0.0, 1.0};
    g.values = {1.0};
    CHECK(weighted_norm_p(g, 1.0, -1.0, 2) == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  }
  SUBCASE("dyadic shell closed form") {
    for (int k : {1, 3, 6}) {
      for (double alpha : {-0.5, 0.0, 0.7}) {
        const double r1 = std::exp2(-k), r0 = std::exp2(-(k + 1));
        PolarGridFn g;
        g.radial_edges = {r0, r1};
        g.values = {1.0};
        const int d = 2;
        const double direct = weighted_norm_p(g, 2.0, alpha, d);
        CHECK(direct == doctest::Approx(shell_weight_integral(r0, r1, alpha, d)));
        // scales like 2^{-k(alpha + d)}
        const double want = sphere_area(d) * std::exp2(-k * (alpha + d)) *
                            (1.0 - std::exp2(-(alpha + d))) / (alpha + d);
        CHECK(direct == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
  SUBCASE("alpha at the integrability edge throws") {
    PolarGridFn g;
    g.radial_edges = {0.0, 1.0};
    g.values = {1.0};
    CHECK_THROWS(weighted_norm_p(g, 1.0, -2.0, 2));
  }
}

TEST_CASE("piece regions: volume vs Monte Carlo membership") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  SUBCASE("shell cap volume (d=2) against box sampling") {
    ShellCapRegion r{2, {0.0, 1.5, 0.0}, 1.0, 1.01, 0.25};
    // bounding box around both caps
    const double pad = 1.02;
    double hits = 0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
      const Vec x{(2.0 * u01(rng) - 1.0) * 0.26, 1.5 + (2.0 * u01(rng) - 1.0) * pad, 0.0};
      if (r.contains(x)) ++hits;
    }
    const double box = 2 * 0.26 * 2 * pad;
    CHECK(r.volume() == doctest::Approx(box * hits / n).epsilon(0.03));
  }
  SUBCASE("samples land inside and cover both caps") {
    ShellCapRegion r{2, {0.0, 1.2, 0.0}, 0.8, 0.81, 0.3};
    int top = 0, bottom = 0;
    for (int i = 0; i < 2000; ++i) {
      const Vec x = r.sample(rng);
      CHECK(r.contains(x));
      (x[1] > 1.2 ? top : bottom)++;
    }
    CHECK(top > 500);
    CHECK(bottom > 500);
  }
  SUBCASE("tube region (d=3)") {
    TubeRegion r{3, 0.01, 0.02, 0.3, 0.005};
    for (int i = 0; i < 2000; ++i) CHECK(r.contains(r.sample(rng)));
    CHECK(r.volume() == doctest::Approx(kPi * (4e-4 - 1e-4) * 0.01));
  }
  SUBCASE("box region (d=3)") {
    BoxRegion r{3, 0.5, 1.5, 0.025};
    for (int i = 0; i < 2000; ++i) CHECK(r.contains(r.sample(rng)));
    CHECK(r.volume() == doctest::Approx(kPi * 0.25 * 0.05));
  }
}

TEST_CASE("knapp configs validate their cases") {
  CHECK_NOTHROW(KnappConfig::small_k(2, 12, 6, 1.5));
  CHECK_THROWS(KnappConfig::small_k(2, 12, 7, 1.5));
  CHECK_NOTHROW(KnappConfig::large_k(2, 12, 9, 1.5));
  CHECK_THROWS(KnappConfig::large_k(2, 12, 6, 1.5));
  CHECK_THROWS(KnappConfig::large_k(2, 12, 9, 1.5, 0.05));  // eps too large
  CHECK_THROWS(KnappConfig::small_k(2, 12, 0, 1.5));
  CHECK_THROWS(KnappConfig::small_k(2, 12, 5, 2.5));
}

TEST_CASE("knapp pieces have the stated extents") {
  SUBCASE("small-k box and norm") {
    const auto cfg = KnappConfig::small_k(2, 10, 4, 1.5, 0.015625);
    const auto pieces = knapp_small_k(cfg);
    const auto* box = std::get_if<BoxIndicator>(&pieces.f_q);
    REQUIRE(box != nullptr);
    CHECK(box->half_width == doctest::Approx(64.0 * std::exp2(-6)));
    CHECK(box->half_height == doctest::Approx(64.0 * std::exp2(-10)));
    CHECK(box->center_z == doctest::Approx(1.5));
    // ||f_Q||_p^p = vol(Q)
    CHECK(pieces.q_box.volume() ==
          doctest::Approx(2 * box->half_width * 2 * box->half_height));
  }
  SUBCASE("small-k piece contains the on-sphere point (0, a + t)") {
    const auto cfg = KnappConfig::small_k(2, 10, 4, 1.5, 0.015625);
    const auto pieces = knapp_small_k(cfg);
    const auto u = pieces.u_piece(1.4);
    CHECK(u.contains({0.0, 1.5 + 1.4, 0.0}));
    CHECK(u.contains({0.0, 1.5 - 1.4, 0.0}));
    CHECK_FALSE(u.contains({0.0, 1.5 + 1.4 + 3.0 * 0.015625 * std::exp2(-10), 0.0}));
  }
  SUBCASE("large-k target set and pieces") {
    const auto cfg = KnappConfig::large_k(2, 12, 9, 1.3);
    const auto pieces = knapp_large_k(cfg);
    const auto q = pieces.q_piece(1.31);
    CHECK(q.z_center == doctest::Approx(1.3 - 1.31));
    CHECK(q.hr1 == doctest::Approx(1e-2 * std::exp2(-9)));
    CHECK(pieces.u_support.contains({0.0, 1.3, 0.0}));
  }
}

TEST_CASE("piece disjointness under the separation rule") {
  const auto cfg = KnappConfig::small_k(2, 10, 4, 1.5, 0.015625);
  const auto pieces = knapp_small_k(cfg);
  const double delta = std::exp2(-10);
  std::mt19937_64 rng(5);
  const auto u1 = pieces.u_piece(1.5);
  const auto u2 = pieces.u_piece(1.5 + delta);
  // shells are disjoint: sample one, test the other
  for (int i = 0; i < 5000; ++i) {
    CHECK_FALSE(u2.contains(u1.sample(rng)));
    CHECK_FALSE(u1.contains(u2.sample(rng)));
  }
}

TEST_CASE("geometry inclusion tests at desk scale") {
  SUBCASE("small-k d=2") {
    const auto cfg = KnappConfig::small_k(2, 12, 5, 1.5, 0.015625);
    const auto rep = geometry_inclusion_test(cfg, 1.5, 20000, 42);
    CHECK(rep.failures == 0);
    CHECK(rep.worst_horizontal > 0.0);
    CHECK(rep.worst_vertical > 0.0);
  }
  SUBCASE("small-k d=3, t != a") {
    const auto cfg = KnappConfig::small_k(3, 12, 5, 1.5, 0.015625);
    const double t = 1.5 + 0.6 * std::exp2(-5);  // within the window length 2^-k
    const auto rep = geometry_inclusion_test(cfg, t, 20000, 43);
    CHECK(rep.failures == 0);
  }
  SUBCASE("large-k d=2 and d=3") {
    for (int d : {2, 3}) {
      const auto cfg = KnappConfig::large_k(d, 12, 9, 1.5);
      const auto rep = geometry_inclusion_test(cfg, 1.5, 20000, 44);
      CHECK(rep.failures == 0);
    }
  }
  SUBCASE("w' = 0 lands within 2^-j of the box center line") {
    const auto cfg = KnappConfig::small_k(2, 12, 5, 1.5, 0.015625);
    const auto pieces = knapp_small_k(cfg);
    std::mt19937_64 rng(3);
    const auto u = pieces.u_piece(1.5);
    for (int i = 0; i < 1000; ++i) {
      const Vec x = u.sample(rng);
      const double h = -x[0];
      const double v = 1.5 - x[1];
      const double nrm = std::hypot(h, v);
      const Vec y{x[0] + 1.5 * h / nrm, x[1] + 1.5 * v / nrm, 0.0};
      const double dist = std::hypot(y[0] - 0.0, y[1] - 1.5);
      CHECK(dist <= std::exp2(-12) * (1 + 1e-9));
    }
  }
}

TEST_CASE("tau nets are separated and maximal") {
  std::vector<double> radii;
  for (int i = 0; i <= 1000; ++i) radii.push_back(1.0 + i / 1000.0);
  const double delta = 1.0 / 64.0;
  const auto net = tau_net(radii, delta);
  for (std::size_t i = 1; i < net.size(); ++i) CHECK(net[i] - net[i - 1] >= delta);
  // maximality: every radius is within delta of a net point
  for (double t : radii) {
    double best = 1e300;
    for (double s : net) best = std::min(best, std::abs(t - s));
    CHECK(best < delta);
  }
  CHECK(net.size() == doctest::Approx(65).epsilon(0.05));
}
