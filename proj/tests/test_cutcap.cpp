#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "bersdec/extract.hpp"
#include "bersdec/rng.hpp"
#include "bersdec/surface.hpp"

using namespace bersdec;

namespace {

Surface random_cusped(SplitMix64& rng, int n, double lo = 0.5,
                      double hi = 2.5) {
  std::vector<Puncture> p(static_cast<std::size_t>(n),
                          Puncture{PunctureKind::Cusp, 0.0});
  const std::vector<Range> r = random_laminar_family(n, rng);
  std::vector<FNCoordinate> f;
  for (int i = 0; i < n - 3; ++i) {
    const double len = rng.uniform(lo, hi);
    f.push_back({len, rng.uniform(-len / 2.0, len / 2.0)});
  }
  return build_surface(p, r, f);
}

// Translate a word in ambient letters to the child's letters via the
// side's puncture map, when every letter lies on that side.
Word to_child_letters(const CutSide& side, const Word& ambient) {
  Word out;
  for (int g : ambient) {
    const int a = g > 0 ? g : -g;
    int child = 0;
    for (std::size_t m = 0; m < side.puncture_map.size(); ++m)
      if (side.puncture_map[m] == a) child = static_cast<int>(m) + 1;
    REQUIRE(child != 0);
    out.push_back(g > 0 ? child : -child);
  }
  return out;
}

}  // namespace

TEST_CASE("cutting a six-cusp surface yields a five-puncture piece") {
  SplitMix64 rng(41);
  const Surface s = random_cusped(rng, 6);
  const CurveClass gamma = standard_curve(1, 3, 6);
  const CutCapResult cut = cut_and_cap(s, gamma, {1, 2, 3});

  REQUIRE(cut.a.surface.n == 5);  // three originals plus two cap cusps
  REQUIRE(cut.b.surface.n == 5);
  REQUIRE(cut.cap_length ==
          Catch::Approx(curve_length(s, gamma)).epsilon(1e-6));
}

TEST_CASE("the cut piece embeds isometrically") {
  SplitMix64 rng(42);
  const Surface s = random_cusped(rng, 6);
  const CurveClass gamma = standard_curve(1, 3, 6);
  const CutCapResult cut = cut_and_cap(s, gamma, {1, 2, 3});

  const Word ambient{1, 2};
  const Word child = to_child_letters(cut.a, ambient);
  const double in_s = curve_length(s, CurveClass{ambient, std::nullopt, {}});
  const double in_a =
      curve_length(cut.a.surface, CurveClass{child, std::nullopt, {}});
  REQUIRE(std::abs(in_s - in_a) <= 1e-6 * std::max(1.0, in_s));
}

TEST_CASE("random cut pairs preserve side-supported word lengths") {
  SplitMix64 rng(43);
  int pairs = 0;
  while (pairs < 100) {
    const int n = 6 + static_cast<int>(rng.below(4));
    const Surface s = random_cusped(rng, n);

    // any admissible standard support splits the punctures into two sides
    const int lo = 1 + static_cast<int>(rng.below(n - 3));
    const int size =
        2 + static_cast<int>(rng.below(
                std::min(n - 2, n - lo) - 1));
    const Range r{lo, lo + size - 1};
    if (r.hi > n - 1 || r.size() < 2 || r.size() > n - 2) continue;
    const CurveClass gamma = standard_curve(r.lo, r.hi, n);

    std::vector<int> side;
    for (int m = r.lo; m <= r.hi; ++m) side.push_back(m);
    const CutCapResult cut = cut_and_cap(s, gamma, side);
    ++pairs;

    REQUIRE(cut.a.surface.n == r.size() + 2);
    REQUIRE(cut.b.surface.n == n - r.size() + 2);
    REQUIRE(cut.cap_length ==
            Catch::Approx(curve_length(s, gamma)).epsilon(1e-6));

    // every two-letter word supported on the cut side keeps its length
    for (int a = r.lo; a < r.hi; ++a) {
      const Word ambient{a, a + 1};
      const Word child = to_child_letters(cut.a, ambient);
      const double in_s =
          curve_length(s, CurveClass{ambient, std::nullopt, {}});
      const double in_a =
          curve_length(cut.a.surface, CurveClass{child, std::nullopt, {}});
      REQUIRE(std::abs(in_s - in_a) <= 1e-6 * std::max(1.0, in_s));
    }
  }
}

TEST_CASE("degenerate cuts are rejected") {
  SplitMix64 rng(44);
  const Surface s = random_cusped(rng, 6);
  CurveClass gamma = standard_curve(1, 3, 6);
  REQUIRE_THROWS_AS(cut_and_cap(s, gamma, {1}), Error);
  try {
    cut_and_cap(s, gamma, {1});
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::UnbalancedCut);
  }

  // side inconsistent with the cut curve's support
  REQUIRE_THROWS_AS(cut_and_cap(s, gamma, {1, 2, 4}), Error);

  // a curve with no support range cannot define a cut
  CurveClass bare = gamma;
  bare.support.reset();
  try {
    cut_and_cap(s, bare, {1, 2, 3});
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NonSeparatingWord);
  }
}
