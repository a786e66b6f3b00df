#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "bersdec/rng.hpp"
#include "bersdec/surface.hpp"

using namespace bersdec;

namespace {

// Distance of a matrix from +-identity, measured entrywise.
double off_identity(const Mat2& m) {
  return static_cast<double>(qabs(m.b) + qabs(m.c) + qabs(m.a - m.d) +
                             qabs(qabs(m.trace()) - 2.0));
}

Mat2 relation_product(const Surface& s) {
  std::vector<Mat2> gens;
  for (int i = 1; i <= s.n; ++i) gens.push_back(s.gens[i]);
  return product_renormalized(gens.begin(), gens.end());
}

Surface random_surface(SplitMix64& rng, int n) {
  std::vector<Puncture> p;
  for (int i = 0; i < n; ++i) {
    const int k = static_cast<int>(rng.below(3));
    if (k == 0)
      p.push_back({PunctureKind::Cusp, 0.0});
    else if (k == 1)
      p.push_back({PunctureKind::ConePi, 0.0});
    else
      p.push_back({PunctureKind::Boundary, rng.uniform(0.3, 3.0)});
  }
  const std::vector<Range> r = random_laminar_family(n, rng);
  std::vector<FNCoordinate> f;
  for (int i = 0; i < n - 3; ++i) {
    const double len = rng.uniform(0.3, 3.0);
    f.push_back({len, rng.uniform(-len, len)});
  }
  return build_surface(p, r, f);
}

}  // namespace

TEST_CASE("five-cusp fixture satisfies relation and length assignments") {
  const Surface s = build_surface(
      std::vector<Puncture>(5, Puncture{PunctureKind::Cusp, 0.0}),
      {{1, 2}, {1, 3}}, {{1.0, 0.25}, {2.0, -0.5}});
  REQUIRE(off_identity(relation_product(s)) <= 1e-8);
  REQUIRE(curve_length(s, standard_curve(1, 2, 5)) ==
          Catch::Approx(1.0).epsilon(1e-6));
  REQUIRE(curve_length(s, standard_curve(1, 3, 5)) ==
          Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("random mixed surfaces keep all holonomy invariants") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const Surface s = random_surface(rng, n);

    REQUIRE(off_identity(relation_product(s)) <= 1e-8);
    for (int i = 1; i <= s.n; ++i) {
      const double want = static_cast<double>(2 * kappa_of(s.punctures[i - 1]));
      REQUIRE(std::abs(static_cast<double>(qabs(s.gens[i].trace())) - want) <=
              1e-8);
    }
    for (std::size_t i = 0; i < s.reference.size(); ++i) {
      const double got = curve_length(
          s, CurveClass{standard_word(s.reference[i]), s.reference[i], {}});
      REQUIRE(std::abs(got - s.fn[i].length) /
                  std::max(1.0, s.fn[i].length) <=
              1e-6);
    }
  }
}

TEST_CASE("cone spheres have trace-zero generators") {
  const Surface s = build_surface(
      std::vector<Puncture>(8, Puncture{PunctureKind::ConePi, 0.0}),
      {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}},
      {{1.0, 0.0}, {1.2, 0.1}, {0.9, -0.2}, {1.4, 0.3}, {1.1, 0.0}});
  for (int i = 1; i <= 8; ++i)
    REQUIRE(std::abs(static_cast<double>(s.gens[i].trace())) <= 1e-8);
}

TEST_CASE("boundary punctures carry their prescribed boundary lengths") {
  std::vector<Puncture> p(5, Puncture{PunctureKind::Boundary, 0.0});
  const double lens[5] = {0.8, 1.3, 2.1, 0.5, 1.9};
  for (int i = 0; i < 5; ++i) p[i].length = lens[i];
  const Surface s =
      build_surface(p, {{1, 2}, {1, 3}}, {{1.5, 0.2}, {2.2, -0.3}});
  for (int i = 1; i <= 5; ++i) {
    const double want = 2.0 * std::cosh(lens[i - 1] / 2.0);
    REQUIRE(std::abs(static_cast<double>(qabs(s.gens[i].trace())) - want) <=
            1e-8 * want);
  }
}

TEST_CASE("full twist periodicity at the spectrum level") {
  SplitMix64 rng(32);
  int exercised = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(4));
    std::vector<Puncture> p(static_cast<std::size_t>(n),
                            Puncture{PunctureKind::Cusp, 0.0});
    const std::vector<Range> r = random_laminar_family(n, rng);
    std::vector<FNCoordinate> f;
    for (int i = 0; i < n - 3; ++i) {
      const double len = rng.uniform(0.5, 2.5);
      f.push_back({len, rng.uniform(-len, len)});
    }
    const Surface s = build_surface(p, r, f);

    const std::size_t e = rng.below(r.size());
    std::vector<FNCoordinate> f2 = f;
    f2[e].twist += f2[e].length;  // one full twist along r[e]
    const Surface s2 = build_surface(p, r, f2);

    // A probe crossing r[e] one step to the right: the shifted surface
    // realizes on the probe the same length the base surface realizes on
    // the once-twisted probe.
    const Range re = r[e];
    if (re.hi + 1 > n - 1 || re.size() + 1 > n - 2) continue;
    const CurveClass probe = standard_curve(re.lo + 1, re.hi + 1, n);
    REQUIRE(probe.support->crosses(re));

    const double base = curve_length(s2, probe);
    const CurveClass twisted = dehn_twist(probe, re, 1);
    const double via_twist = curve_length(s, twisted);
    REQUIRE(std::abs(base - via_twist) <= 1e-6 * std::max(1.0, base));
    ++exercised;
  }
  REQUIRE(exercised >= 10);
}

TEST_CASE("construction rejects invalid inputs") {
  const std::vector<Puncture> cusp4(4, Puncture{PunctureKind::Cusp, 0.0});
  REQUIRE_THROWS_AS(
      build_surface(std::vector<Puncture>(3, Puncture{}), {}, {}), Error);
  REQUIRE_THROWS_AS(build_surface(cusp4, {{1, 2}}, {{-1.0, 0.0}}), Error);
  REQUIRE_THROWS_AS(build_surface(cusp4, {{1, 2}}, {{55.0, 0.0}}), Error);
  REQUIRE_THROWS_AS(build_surface(cusp4, {{1, 2}}, {}), Error);
  REQUIRE_THROWS_AS(
      build_surface(std::vector<Puncture>(6, Puncture{}),
                    {{1, 3}, {2, 4}, {1, 5}},
                    {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}),
      Error);
}

TEST_CASE("curve length is a class function of the word") {
  SplitMix64 rng(33);
  const Surface s = random_surface(rng, 7);
  const CurveClass c = standard_curve(2, 5, 7);
  const double base = curve_length(s, c);
  Word w = c.word;
  std::rotate(w.begin(), w.begin() + 2, w.end());
  REQUIRE(curve_length(s, CurveClass{w, std::nullopt, {}}) ==
          Catch::Approx(base).epsilon(1e-12));
  REQUIRE(curve_length(s, CurveClass{word_inverse(c.word), std::nullopt, {}}) ==
          Catch::Approx(base).epsilon(1e-12));
}
