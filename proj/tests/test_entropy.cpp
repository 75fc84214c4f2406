#include <doctest.h>

#include <cmath>
#include <random>

#include "sphmax/entropy.hpp"

using namespace sphmax;
using namespace sphmax::entropy;

namespace {

// naive reference greedy, written independently of the library path
int naive_greedy(std::vector<double> pts, double lo, double hi, double delta) {
  std::sort(pts.begin(), pts.end());
  int count = 0;
  double covered_to = -1e300;
  bool have = false;
  for (double p : pts) {
    if (p < lo - 1e-12 || p > hi + 1e-12) continue;
    if (!have || p > covered_to) {
      ++count;
      covered_to = p + delta;
      have = true;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("cover count basics") {
  setgen::SampledSet S;
  S.resolution_j = 20;
  S.guard_bits = 3;
  S.window = LogInterval(0.0, 1.0);

  SUBCASE("single point") {
    S.points = {0.5};
    CHECK(cover_count(S, LogInterval(0.0, 1.0), 0.25) == 1);
  }
  SUBCASE("three spread points at delta 0.4 need 3 intervals") {
    S.points = {0.0, 0.5, 1.0};
    CHECK(cover_count(S, LogInterval(0.0, 1.0), 0.4) == 3);
    CHECK(cover_count(S, LogInterval(0.0, 1.0), 0.5) == 2);
    CHECK(cover_count(S, LogInterval(0.0, 1.0), 1.0) == 1);
  }
  SUBCASE("empty window") {
    S.points = {0.5};
    CHECK(cover_count(S, LogInterval(0.6, 1.0), 0.25) == 0);
  }
  SUBCASE("resolution guard") {
    S.points = {0.5};
    S.resolution_j = 2;
    CHECK_THROWS_AS(cover_count(S, LogInterval(0.0, 1.0), 1.0 / 64.0), ResolutionError);
  }
}

TEST_CASE("brute force oracle on tiny instances") {
  CHECK(brute_force_cover_count(std::vector<double>{0.0}, 1.0) == 1);
  CHECK(brute_force_cover_count(std::vector<double>{0.0, 0.5, 1.0}, 1.0) == 1);
  CHECK(brute_force_cover_count(std::vector<double>{0.0, 0.5, 1.0}, 0.4) == 3);
  std::vector<double> big(17, 0.0);
  CHECK_THROWS(brute_force_cover_count(big, 1.0));
}

TEST_CASE("greedy equals brute force on 500 random instances") {
  std::mt19937_64 rng(123456);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(u01(rng) * 12);
    std::vector<double> pts;
    for (int q = 0; q < n; ++q) pts.push_back(u01(rng));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const double delta = 0.01 + 0.7 * u01(rng);
    const auto greedy = cover_count_points(pts, -1.0, 2.0, delta);
    CHECK(greedy == brute_force_cover_count(pts, delta));
    CHECK(greedy == naive_greedy(pts, -1.0, 2.0, delta));
  }
}

TEST_CASE("cover count monotonicity and bounds") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> pts;
    const int n = 2 + static_cast<int>(u01(rng) * 40);
    for (int q = 0; q < n; ++q) pts.push_back(u01(rng));
    std::sort(pts.begin(), pts.end());
    const double d1 = 0.01 + 0.4 * u01(rng);
    const double d2 = d1 + 0.3 * u01(rng);
    // nonincreasing in delta
    CHECK(cover_count_points(pts, 0.0, 1.0, d1) >= cover_count_points(pts, 0.0, 1.0, d2));
    // monotone in the window
    CHECK(cover_count_points(pts, 0.1, 0.8, d1) <= cover_count_points(pts, 0.0, 1.0, d1));
    // subadditive over a split window
    const double m = u01(rng);
    CHECK(cover_count_points(pts, 0.0, 1.0, d1) <=
          cover_count_points(pts, 0.0, m, d1) + cover_count_points(pts, m, 1.0, d1));
    // crude bounds
    const auto c = cover_count_points(pts, 0.0, 1.0, d1);
    CHECK(c >= 1);
    CHECK(c <= static_cast<std::int64_t>(std::ceil(1.0 / d1)) + 1);
    // dilation isometry: translate everything (log coordinates)
    std::vector<double> shifted = pts;
    for (auto& p : shifted) p += 5.25;
    CHECK(c == cover_count_points(shifted, 5.25, 6.25, d1));
  }
}

TEST_CASE("scan_sup on closed-form families") {
  SUBCASE("full interval: the unit window row dominates at rho=0") {
    const auto scan = scan_sup(setgen::full_interval(1.0, 2.0), 10, 0.0);
    REQUIRE(scan.rows.size() == 11);
    const auto& best = scan.best();
    CHECK(best.level == 0);
    // frozen from the uniform-grid oracle: ceil((L+g)/(delta+g)) with
    // g = delta/8 on [0,1]
    const double delta = std::exp2(-10), g = delta / 8.0;
    const auto expected = static_cast<std::int64_t>(std::ceil((1.0 + g) / (delta + g)));
    CHECK(best.count == expected);
    CHECK(std::abs(static_cast<double>(best.count) - 1024.0) < 0.15 * 1024.0);
  }
  SUBCASE("lacunary: unit window holds both endpoint powers") {
    const auto scan = scan_sup(setgen::lacunary(), 10, 0.0);
    CHECK(scan.best().count == 2);  // {1, 2} inside [1, 2]
    CHECK(scan.best().level == 0);
  }
  SUBCASE("rho=0 value equals the plain covering count") {
    const auto scan = scan_sup(setgen::cantor_set(1.0 / 3.0, 1.0, 2.0), 8, 0.0);
    for (const auto& row : scan.rows)
      CHECK(row.value == doctest::Approx(static_cast<double>(row.count)));
  }
}

TEST_CASE("scan respects declared ranges for irregular unions") {
  const auto spec = setgen::union_of({setgen::lacunary(2.0), setgen::lacunary(3.0)});
  CHECK_THROWS(scan_sup(spec, 6, 0.0));
  const auto scan = scan_sup(spec, 6, 0.0, LogInterval(0.0, 4.0));
  CHECK(scan.best().count >= 2);
}

TEST_CASE("scan is exactly translation equivariant") {
  for (const char* text : {"cantor(ratio=0.3333333333,lo=1,hi=2)", "seq(a=1)"}) {
    const auto spec = setgen::parse_set_spec(text);
    const auto base = scan_sup(spec, 9, 0.7);
    const auto moved = scan_sup(setgen::scaled(3.7, spec), 9, 0.7);
    REQUIRE(base.rows.size() == moved.rows.size());
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
      CHECK(base.rows[i].count == moved.rows[i].count);
      CHECK(moved.rows[i].window.lo ==
            doctest::Approx(base.rows[i].window.lo + std::log2(3.7)).epsilon(1e-12));
    }
  }
}

TEST_CASE("hypothesis functional: bounded inside, divergent outside") {
  entropy::ScanEngine engine(setgen::full_interval(1.0, 2.0));
  SUBCASE("lacunary stays bounded anywhere with N == 1 per window") {
    entropy::ScanEngine lac(setgen::lacunary());
    const auto rep = check_mainassu(lac, 2, 1.5, 0.0, 0.1, 12);
    CHECK(rep.value < 10.0);
    CHECK(rep.cumulative[11] == doctest::Approx(rep.cumulative[5]).epsilon(0.05));
  }
  SUBCASE("full interval, in-region sample decays") {
    const auto rep = check_mainassu(engine, 2, 2.5, -0.5, 0.05, 14);
    CHECK(rep.cumulative[13] == doctest::Approx(rep.cumulative[7]).epsilon(1e-9));
  }
  SUBCASE("full interval, out-of-region sample diverges") {
    // alpha below 1-d: the |I| = delta windows blow up like 2^{0.6 j}
    const auto rep = check_mainassu(engine, 2, 2.0, -1.5, 0.1, 14);
    CHECK(rep.per_j[13] > 4.0 * rep.per_j[7]);
  }
}
