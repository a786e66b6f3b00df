#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bersdec/constructions.hpp"
#include "bersdec/rng.hpp"
#include "reference_oracle.hpp"

using namespace bersdec;

TEST_CASE("hairy-sphere constants match the closed forms") {
  const HairyParams h10 = hairy_constants(1, 0.0);
  REQUIRE(h10.x0 ==
          Catch::Approx(oracle::asinh1_times(2)).margin(1e-12));
  REQUIRE(h10.boundary_count == 6);
  REQUIRE(h10.lower_bound ==
          Catch::Approx(oracle::asinh1_times(8)).margin(1e-12));

  const HairyParams h20 = hairy_constants(2, 0.0);
  REQUIRE(h20.boundary_count == 12);
  REQUIRE(h20.lower_bound ==
          Catch::Approx(oracle::asinh1_times(16)).margin(1e-12));
  REQUIRE(h20.lower_bound ==
          Catch::Approx(14.101977392312688404).margin(1e-12));

  for (const int p : {1, 2, 3, 5, 8}) {
    for (const double ell : {0.0, 0.5, 2.0, 8.0}) {
      const HairyParams h = hairy_constants(p, ell);
      REQUIRE(h.boundary_count == 2 * p * p + 4);
      REQUIRE(h.x0 == Catch::Approx(oracle::pentagon_side(ell)).margin(1e-12));
      REQUIRE(h.rectangle_long == Catch::Approx(4.0 * p * h.x0).margin(1e-12));
      REQUIRE(h.rectangle_short == Catch::Approx(2.0 * p * h.x0).margin(1e-12));
      // all three interaction cases force the same length
      REQUIRE(h.case_equal_curve ==
              Catch::Approx(h.case_crossing).margin(1e-12));
      REQUIRE(h.case_crossing ==
              Catch::Approx(h.case_separating).margin(1e-12));
      REQUIRE(h.lower_bound ==
              Catch::Approx(h.case_equal_curve).margin(1e-12));
    }
  }
  REQUIRE(hairy_constants(1, 8.0).x0 ==
          Catch::Approx(2.085432203461418796).margin(1e-12));

  try {
    hairy_constants(0, 1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::DomainError);
  }
  try {
    hairy_constants(1, -0.5);
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::DomainError);
  }
}

TEST_CASE("the separation property holds for a single pair") {
  const SeparationReport rep = check_separation_lemma(6, {1, 2}, {3, 4});
  REQUIRE(rep.n == 6);
  REQUIRE(rep.trees_checked == 105);
  REQUIRE(rep.pairs_checked == 1);
  REQUIRE(rep.counterexamples == 0);
  REQUIRE(rep.first_counterexample.empty());
  REQUIRE(rep.pass);
}

TEST_CASE("the separation property survives exhaustive search") {
  const SeparationReport r6 = check_separation_lemma(6);
  REQUIRE(r6.trees_checked == 105);
  REQUIRE(r6.pairs_checked == 45);
  REQUIRE(r6.counterexamples == 0);
  REQUIRE(r6.pass);

  const SeparationReport r7 = check_separation_lemma(7);
  REQUIRE(r7.trees_checked == 945);
  REQUIRE(r7.pairs_checked == 105);
  REQUIRE(r7.pass);

  const SeparationReport r8 = check_separation_lemma(8);
  REQUIRE(r8.trees_checked == 10395);
  REQUIRE(r8.pairs_checked == 210);
  REQUIRE(r8.pass);
}

TEST_CASE("separation inputs are validated") {
  const auto code_of = [](auto&& fn) {
    try {
      fn();
      FAIL("expected an error");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::DomainError;
  };
  REQUIRE(code_of([] { check_separation_lemma(5); }) == ErrorCode::NTooLarge);
  REQUIRE(code_of([] { check_separation_lemma(10); }) == ErrorCode::NTooLarge);
  REQUIRE(code_of([] { check_separation_lemma(6, {1, 2}, {2, 3}); }) ==
          ErrorCode::DomainError);  // overlapping pairs
  REQUIRE(code_of([] { check_separation_lemma(6, {1, 7}, {2, 3}); }) ==
          ErrorCode::DomainError);  // index out of range
  REQUIRE(code_of([] { check_separation_lemma(6, {1, 1}, {2, 3}); }) ==
          ErrorCode::DomainError);  // repeated index
}

TEST_CASE("the genus-2 lift resolves the nested chain") {
  const std::vector<Range> supports = {Range{1, 2}, Range{1, 3}, Range{1, 4}};
  const std::vector<double> lengths = {1.0, 1.5, 0.7};
  const LiftReport rep = hyperelliptic_lift(2, supports, lengths);

  REQUIRE(rep.g == 2);
  REQUIRE(rep.lifts.size() == 3);
  REQUIRE(rep.lifts[0].tag == LiftTag::DoubledArc);
  REQUIRE(rep.lifts[0].lift_lengths == std::vector<double>{1.0});
  REQUIRE(!rep.lifts[0].deduplicated);
  REQUIRE(rep.lifts[1].tag == LiftTag::OddOdd);
  REQUIRE(rep.lifts[1].lift_lengths == std::vector<double>{3.0});
  REQUIRE(rep.lifts[2].tag == LiftTag::EvenEven);
  REQUIRE(rep.lifts[2].lift_lengths == std::vector<double>({0.7, 0.7}));
  REQUIRE(rep.lifts[2].deduplicated);

  REQUIRE(rep.base_max == 1.5);
  REQUIRE(rep.mu_max == 3.0);  // exactly twice the longest base curve
  REQUIRE(rep.completion_count == 0);
  REQUIRE(rep.curve_count == 3);
  REQUIRE(rep.total_bound == 3.0);

  REQUIRE(rep.pieces.size() == 2);
  for (const LiftPiece& p : rep.pieces) {
    REQUIRE(p.holes == 3);
    REQUIRE(p.cone_points == 1);
    REQUIRE(p.involution_invariant);
  }
}

TEST_CASE("a genus-3 family with a four-holed piece needs one completion") {
  const std::vector<Range> supports = {Range{1, 2}, Range{1, 3}, Range{4, 5},
                                       Range{4, 6}, Range{1, 6}};
  const std::vector<double> lengths = {0.5, 1.0, 0.8, 1.2, 0.9};
  const LiftReport rep = hyperelliptic_lift(3, supports, lengths);

  REQUIRE(rep.completion_count == 1);
  REQUIRE(rep.curve_count == 6);
  REQUIRE(rep.mu_max == Catch::Approx(2.4).margin(1e-15));

  int four_holed = 0;
  for (const LiftPiece& p : rep.pieces) {
    if (p.holes == 4) {
      ++four_holed;
      REQUIRE(p.cone_points == 0);
      REQUIRE(p.boundary_curves.size() == 3);
      REQUIRE(p.completion_bound ==
              Catch::Approx(2.0 * 2.4 + 12.0).margin(1e-12));
    } else {
      REQUIRE(p.holes == 3);
      REQUIRE(p.cone_points == 1);
    }
  }
  REQUIRE(four_holed == 1);
  REQUIRE(rep.pieces.size() == 3);
  REQUIRE(rep.total_bound == Catch::Approx(16.8).margin(1e-12));

  // the outermost curve covers all but two points and deduplicates
  REQUIRE(rep.lifts[4].tag == LiftTag::EvenEven);
  REQUIRE(rep.lifts[4].deduplicated);
}

TEST_CASE("lift input validation") {
  const auto code_of = [](auto&& fn) {
    try {
      fn();
      FAIL("expected an error");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::DomainError;
  };
  REQUIRE(code_of([] {
            hyperelliptic_lift(1, std::vector<Range>{}, std::vector<double>{});
          }) == ErrorCode::DomainError);
  REQUIRE(code_of([] {
            hyperelliptic_lift(2, {Range{1, 2}, Range{1, 3}}, {1.0, 1.0});
          }) == ErrorCode::WrongCurveCount);
  REQUIRE(code_of([] {
            hyperelliptic_lift(2, {Range{1, 2}, Range{1, 3}, Range{1, 4}},
                               {1.0, 1.0});
          }) == ErrorCode::WrongCurveCount);
  REQUIRE(code_of([] {
            hyperelliptic_lift(2, {Range{1, 3}, Range{2, 4}, Range{1, 4}},
                               {1.0, 1.0, 1.0});
          }) == ErrorCode::InvalidLaminarFamily);

  // the geometric overload demands a cone-point quotient of the right size
  std::vector<Puncture> cusps(6, Puncture{PunctureKind::Cusp, 0.0});
  const std::vector<Range> fan = {Range{1, 2}, Range{1, 3}, Range{1, 4}};
  std::vector<FNCoordinate> fn = {{1.0, 0.0}, {1.2, 0.0}, {0.9, 0.0}};
  const Surface cusp_s = build_surface(cusps, fan, fn);
  const PantsDecomposition p = detail::measure_family(cusp_s, fan, {});
  REQUIRE(code_of([&] { hyperelliptic_lift(2, cusp_s, p); }) ==
          ErrorCode::ParityInconsistency);

  std::vector<Puncture> cones(6, Puncture{PunctureKind::ConePi, 0.0});
  const Surface cone_s = build_surface(cones, fan, fn);
  REQUIRE(code_of([&] { hyperelliptic_lift(3, cone_s, p); }) ==
          ErrorCode::WrongCurveCount);  // wrong puncture count for g=3
}

TEST_CASE("random lifts keep the doubling identity and the class count") {
  SplitMix64 rng(83);
  for (int g = 2; g <= 6; ++g) {
    const int n = 2 * g + 2;
    for (int trial = 0; trial < 50; ++trial) {
      const std::vector<Range> supports = random_laminar_family(n, rng);
      std::vector<double> lengths;
      for (std::size_t i = 0; i < supports.size(); ++i)
        lengths.push_back(rng.uniform(0.3, 3.0));
      const LiftReport rep = hyperelliptic_lift(g, supports, lengths);

      REQUIRE(rep.curve_count == 3 * g - 3);
      REQUIRE(rep.mu_max <= 2.0 * rep.base_max + 1e-12);
      REQUIRE(rep.total_bound >= rep.mu_max);
      for (const LiftPiece& piece : rep.pieces) {
        REQUIRE((piece.holes == 3 || piece.holes == 4));
        if (piece.holes == 4) {
          REQUIRE(piece.completion_bound >= 12.0);
          REQUIRE(piece.completion_bound <= 2.0 * rep.mu_max + 12.0 + 1e-12);
        }
      }
      for (const LiftedCurve& lc : rep.lifts) {
        if (lc.deduplicated) REQUIRE(lc.support.size() == n - 2);
        if (lc.tag == LiftTag::OddOdd)
          REQUIRE(lc.lift_lengths ==
                  std::vector<double>{2.0 * lc.base_length});
      }
    }
  }
}

TEST_CASE("geometric quotients lift below the hyperelliptic bound") {
  SplitMix64 rng(84);
  for (const int g : {2, 3}) {
    const int n = 2 * g + 2;
    const double bound =
        40.0 * std::log(6.0 * M_PI) * std::sqrt(2.0 * (g - 1.0)) + 12.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Puncture> cones(static_cast<std::size_t>(n),
                                  Puncture{PunctureKind::ConePi, 0.0});
      const std::vector<Range> family = random_laminar_family(n, rng);
      std::vector<FNCoordinate> fn;
      for (int i = 0; i < n - 3; ++i) fn.push_back({rng.uniform(0.5, 1.5), 0.0});
      const Surface s = build_surface(cones, family, fn);
      const PantsDecomposition p = detail::measure_family(s, s.reference, {});

      const LiftReport rep = hyperelliptic_lift(g, s, p);
      REQUIRE(rep.mu_max <= 2.0 * p.max_length + 1e-12);
      REQUIRE(rep.total_bound <= bound);
    }
  }
}
