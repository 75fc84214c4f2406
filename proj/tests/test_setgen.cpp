#include <doctest.h>

#include <cmath>

#include "sphmax/sample.hpp"
#include "sphmax/setspec.hpp"

using namespace sphmax;
using namespace sphmax::setgen;

TEST_CASE("parser accepts the grammar") {
  CHECK_NOTHROW(parse_set_spec("full"));
  CHECK_NOTHROW(parse_set_spec("interval(lo=1,hi=2)"));
  CHECK_NOTHROW(parse_set_spec("lacunary"));
  CHECK_NOTHROW(parse_set_spec("lacunary(base=3)"));
  CHECK_NOTHROW(parse_set_spec("seq(a=1.0)"));
  CHECK_NOTHROW(parse_set_spec("cantor(ratio=0.3333333333,lo=1,hi=2)"));
  CHECK_NOTHROW(parse_set_spec("points(1.0, 1.5, 2.0)"));
  CHECK_NOTHROW(parse_set_spec("union(lacunary, cantor(ratio=0.3333333333, lo=1, hi=2))"));
  CHECK_NOTHROW(parse_set_spec("scale(2, seq(a=1))"));
  CHECK_NOTHROW(parse_set_spec("periodize(seq(a=1))"));
  CHECK_NOTHROW(parse_set_spec("window(4, lacunary)"));

  const SetSpec s = parse_set_spec("seq(a=1.0)");
  REQUIRE(s.get_if<SequenceSet>() != nullptr);
  CHECK(s.get_if<SequenceSet>()->a == 1.0);

  const SetSpec u = parse_set_spec("union(lacunary, cantor(ratio=0.3333333333, lo=1, hi=2))");
  REQUIRE(u.get_if<UnionSet>() != nullptr);
  REQUIRE(u.get_if<UnionSet>()->parts.size() == 2);
  CHECK(u.get_if<UnionSet>()->parts[0].get_if<Lacunary>() != nullptr);
  CHECK(u.get_if<UnionSet>()->parts[1].get_if<CantorSet>() != nullptr);
}

TEST_CASE("parser rejects bad input with a position") {
  CHECK_THROWS_AS(parse_set_spec("seq(a=-1)"), SpecParseError);
  CHECK_THROWS_AS(parse_set_spec("cantor(ratio=0.6,lo=1,hi=2)"), SpecParseError);
  CHECK_THROWS_AS(parse_set_spec("lacunary(base=1)"), SpecParseError);
  CHECK_THROWS_AS(parse_set_spec("scale(0, full)"), SpecParseError);
  CHECK_THROWS_AS(parse_set_spec("nonsense(1)"), SpecParseError);
  CHECK_THROWS_AS(parse_set_spec("seq(a=1) trailing"), SpecParseError);
  CHECK_THROWS_AS(parse_set_spec("seq(b=1)"), SpecParseError);

  try {
    parse_set_spec("union(lacunary, seq(a=-2))");
    FAIL("expected SpecParseError");
  } catch (const SpecParseError& e) {
    CHECK(e.position > 0);
  }
}

TEST_CASE("round trip through to_string") {
  for (const char* text :
       {"full", "lacunary(base=3)", "seq(a=1.5)", "union(lacunary(base=2),seq(a=1))",
        "window(4,periodize(seq(a=1)))"}) {
    const SetSpec a = parse_set_spec(text);
    const SetSpec b = parse_set_spec(to_string(a));
    CHECK(to_string(a) == to_string(b));
  }
}

TEST_CASE("lacunary sample in the unit window") {
  const SetSpec s = lacunary();
  const SampledSet smp = sample(s, LogInterval(0.0, 1.0), 10);
  REQUIRE(smp.points.size() == 2);
  CHECK(smp.points[0] == doctest::Approx(0.0));
  CHECK(smp.points[1] == doctest::Approx(1.0));
}

TEST_CASE("sequence sample enumerates exactly until the gap cutoff") {
  // independent oracle: u_n = log2(1 + 1/n) enumerated directly
  const int j = 4, guard = 3;
  const double subres = std::exp2(-(j + guard));
  std::vector<double> expect;
  double prev = 1.0;
  expect.push_back(prev);
  for (int n = 2;; ++n) {
    const double u = std::log2(1.0 + std::pow(static_cast<double>(n), -1.0));
    if (prev - u < subres) break;
    expect.push_back(u);
    prev = u;
  }
  std::sort(expect.begin(), expect.end());

  const SampledSet smp = sample(sequence_set(1.0), LogInterval(0.0, 1.0), j);
  // every oracle point must appear exactly
  for (double u : expect) {
    bool found = false;
    for (double p : smp.points) found |= (p == u);
    CHECK_MESSAGE(found, "missing sequence point ", u);
  }
  // head of the sample (coarsest points) matches the oracle's tail exactly
  CHECK(smp.points.back() == 1.0);
  CHECK(smp.points[smp.points.size() - 2] == doctest::Approx(std::log2(1.5)));
  CHECK(smp.points[smp.points.size() - 3] == doctest::Approx(std::log2(4.0 / 3.0)));
  // grid-filled tail: below the last enumerated point the gaps never exceed
  // the sub-resolution (the enumerated head keeps the set's true gaps)
  const double cutoff = expect.front();
  for (std::size_t i = 1; i < smp.points.size(); ++i) {
    if (smp.points[i] <= cutoff + 1e-15)
      CHECK(smp.points[i] - smp.points[i - 1] <= subres * (1 + 1e-12));
  }
}

TEST_CASE("cantor sample counts 2^m generation points") {
  const int j = 6, guard = 3;
  const SampledSet smp = sample(cantor_set(1.0 / 3.0, 1.0, 2.0), LogInterval(0.0, 1.0), j);
  // smallest m with 3^-m <= 2^-(j+guard)
  int m = 0;
  double len = 1.0;
  while (len > std::exp2(-(j + guard))) {
    len /= 3.0;
    ++m;
  }
  CHECK(smp.points.size() == std::size_t(1) << m);
  CHECK(smp.points.front() == doctest::Approx(0.0));
  // all points lie in the window and are sorted strictly
  for (std::size_t i = 1; i < smp.points.size(); ++i) CHECK(smp.points[i] > smp.points[i - 1]);
}

TEST_CASE("window_restrict maps to [1,2]") {
  SUBCASE("lacunary at R=4") {
    const SetSpec s = window_restrict(lacunary(), 4.0);
    const SampledSet smp = sample(s, LogInterval(0.0, 1.0), 8);
    REQUIRE(smp.points.size() == 2);
    CHECK(smp.points[0] == doctest::Approx(0.0));
    CHECK(smp.points[1] == doctest::Approx(1.0));
  }
  SUBCASE("full ray is scale invariant") {
    for (double R : {0.25, 1.0, 3.0, 1024.0}) {
      const SetSpec s = window_restrict(full_ray(), R);
      const SampledSet smp = sample(s, LogInterval(0.0, 1.0), 6);
      CHECK(smp.points.front() == doctest::Approx(0.0));
      CHECK(smp.points.back() == doctest::Approx(1.0));
      CHECK(smp.points.size() > 64);
    }
  }
  SUBCASE("periodized sequence set is invariant under dyadic window moves") {
    const SetSpec base = periodized(sequence_set(1.0));
    const SampledSet a = sample(window_restrict(base, 1.0), LogInterval(0.0, 1.0), 8);
    const SampledSet b = sample(window_restrict(base, 8.0), LogInterval(0.0, 1.0), 8);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
      CHECK(a.points[i] == doctest::Approx(b.points[i]).epsilon(1e-12));
  }
}

TEST_CASE("scaling isometry: samples translate point for point") {
  const double lambda = 3.0;
  const double shift = std::log2(lambda);
  for (const char* text : {"interval(lo=1,hi=2)", "seq(a=1)", "cantor(ratio=0.4,lo=1,hi=2)",
                           "points(1.1,1.7,1.9)"}) {
    const SetSpec s = parse_set_spec(text);
    const SampledSet base = sample(s, LogInterval(0.0, 1.0), 7);
    const SampledSet scaled_smp = sample(scaled(lambda, s), LogInterval(shift, 1.0 + shift), 7);
    REQUIRE(base.points.size() == scaled_smp.points.size());
    const double tol = base.subresolution();
    for (std::size_t i = 0; i < base.points.size(); ++i)
      CHECK(std::abs(scaled_smp.points[i] - (base.points[i] + shift)) < tol);
  }
}

TEST_CASE("union sampling merges members") {
  const SetSpec u = union_of({lacunary(), explicit_points({1.5})});
  const SampledSet smp = sample(u, LogInterval(0.0, 1.0), 8);
  REQUIRE(smp.points.size() == 3);
  CHECK(smp.points[0] == doctest::Approx(0.0));
  CHECK(smp.points[1] == doctest::Approx(std::log2(1.5)));
  CHECK(smp.points[2] == doctest::Approx(1.0));
}

TEST_CASE("sampling is deterministic") {
  const SetSpec s = parse_set_spec("union(seq(a=0.7), cantor(ratio=0.3,lo=1,hi=2))");
  const SampledSet a = sample(s, LogInterval(0.0, 1.0), 9);
  const SampledSet b = sample(s, LogInterval(0.0, 1.0), 9);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
}

TEST_CASE("empty intersection is flagged, not an error") {
  const SampledSet smp = sample(explicit_points({8.0}), LogInterval(0.0, 1.0), 6);
  CHECK(smp.points.empty());
  CHECK(smp.empty_intersection);
}

TEST_CASE("scan domain resolution") {
  CHECK(resolve_scan_domain(full_ray()).periodic);
  CHECK(resolve_scan_domain(periodized(sequence_set(1.0))).periodic);
  CHECK(resolve_scan_domain(lacunary(4.0)).period == doctest::Approx(2.0));
  const auto bounded = resolve_scan_domain(sequence_set(1.0));
  CHECK_FALSE(bounded.periodic);
  CHECK(bounded.range.lo == doctest::Approx(0.0));
  CHECK(bounded.range.hi == doctest::Approx(1.0));
  // incommensurable periods need a declared range
  CHECK_THROWS(resolve_scan_domain(union_of({lacunary(2.0), lacunary(3.0)})));
  CHECK_NOTHROW(
      resolve_scan_domain(union_of({lacunary(2.0), lacunary(3.0)}), LogInterval(0.0, 4.0)));
}
