#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bersdec/kernel.hpp"
#include "bersdec/mat2.hpp"
#include "bersdec/rng.hpp"
#include "reference_oracle.hpp"

using namespace bersdec;

TEST_CASE("trace and length are mutual inverses on (0, 50]") {
  for (int k = 1; k <= 5000; ++k) {
    const double ell = 0.01 * k;
    const double back = length_from_trace(trace_from_length(ell));
    REQUIRE(std::abs(back - ell) <= 1e-9 * std::max(1.0, ell));
  }
  // The trace guard |t| > 2 + 1e-9 makes lengths below ~6.4e-5 unrepresentable,
  // so the sampled grid starts just above that floor.
  for (double ell : {7e-5, 1e-4, 0.003, 49.999, 50.0}) {
    const double back = length_from_trace(trace_from_length(ell));
    REQUIRE(std::abs(back - ell) <= 1e-9 * std::max(1.0, ell));
  }
}

TEST_CASE("trace_from_length matches the high-precision reference") {
  REQUIRE(trace_from_length(1.0) ==
          Catch::Approx(2.255251930412761570).margin(1e-14));
  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const double ell = rng.uniform(0.01, 40.0);
    REQUIRE(trace_from_length(ell) ==
            Catch::Approx(oracle::two_cosh_half(ell)).epsilon(1e-13));
  }
}

TEST_CASE("length_from_trace matches the high-precision reference") {
  REQUIRE(length_from_trace(3.0) ==
          Catch::Approx(1.924847300238413790).margin(1e-14));
  SplitMix64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const double tr = rng.uniform(2.001, 1e6);
    REQUIRE(length_from_trace(tr) ==
            Catch::Approx(oracle::two_acosh_half(tr)).epsilon(1e-13));
    REQUIRE(length_from_trace(-tr) == length_from_trace(tr));
  }
}

TEST_CASE("non-hyperbolic traces are rejected") {
  REQUIRE_THROWS_AS(length_from_trace(2.0), Error);
  REQUIRE_THROWS_AS(length_from_trace(0.0), Error);
  REQUIRE_THROWS_AS(length_from_trace(-1.999999), Error);
  try {
    length_from_trace(1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NonHyperbolicTrace);
  }
}

TEST_CASE("collar halfwidth: fixed point and reference values") {
  const double a1 = 0.8813735870195430252;  // asinh(1)
  REQUIRE(std::abs(collar_halfwidth(2.0 * a1) - a1) <= 1e-12);

  SplitMix64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const double ell = rng.uniform(0.05, 30.0);
    REQUIRE(collar_halfwidth(ell) ==
            Catch::Approx(oracle::collar_halfwidth(ell)).epsilon(1e-13));
  }

  // For long curves the halfwidth is asymptotically 1/sinh(l/2).
  REQUIRE(std::abs(collar_halfwidth(20.0) - 1.0 / std::sinh(10.0)) <= 1e-12);

  // Strictly decreasing: shorter curves have wider collars.
  double prev = collar_halfwidth(0.01);
  for (int k = 1; k <= 400; ++k) {
    const double cur = collar_halfwidth(0.01 + 0.1 * k);
    REQUIRE(cur < prev);
    prev = cur;
  }
}

TEST_CASE("crossing bound: value, reference, and shortening property") {
  REQUIRE(crossing_length_bound(2.0, 2.0) ==
          Catch::Approx(1.694901162591702746).margin(1e-12));

  SplitMix64 rng(14);
  int checked = 0;
  while (checked < 200) {
    const double a = rng.uniform(0.2, 20.0);
    const double b = rng.uniform(0.2, 20.0);
    if (!(std::sinh(a / 2.0) * std::sinh(b / 2.0) > 1.0)) continue;
    REQUIRE(crossing_length_bound(a, b) ==
            Catch::Approx(oracle::crossing_length(a, b)).epsilon(1e-12));
    ++checked;
  }

  // Shortening grid: whenever both lengths are at most 2*asinh(1), the strip
  // constraint is infeasible (two such curves cannot cross), reported as a
  // degenerate bound; above that threshold the bound is defined and grows
  // in both arguments.
  const double a1 = 0.8813735870195430252;  // asinh(1)
  for (int i = 1; i <= 24; ++i) {
    for (int j = 1; j <= 24; ++j) {
      const double a = 2.0 * a1 * i / 25.0;
      const double b = 2.0 * a1 * j / 25.0;
      REQUIRE_THROWS_AS(crossing_length_bound(a, b), Error);
    }
  }
  for (int i = 1; i < 40; ++i) {
    REQUIRE(crossing_length_bound(2.0 + 0.25 * (i + 1), 5.0) >
            crossing_length_bound(2.0 + 0.25 * i, 5.0));
    REQUIRE(crossing_length_bound(5.0, 2.0 + 0.25 * (i + 1)) >
            crossing_length_bound(5.0, 2.0 + 0.25 * i));
  }
}

TEST_CASE("pentagon side matches the high-precision reference") {
  REQUIRE(pentagon_side(0.0) ==
          Catch::Approx(1.762747174039086050).margin(1e-13));
  REQUIRE(pentagon_side(8.0) ==
          Catch::Approx(2.085432203461418796).margin(1e-13));
  SplitMix64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const double ell = rng.uniform(0.0, 32.0);
    REQUIRE(pentagon_side(ell) ==
            Catch::Approx(oracle::pentagon_side(ell)).epsilon(1e-13));
  }
}

TEST_CASE("matrix products keep determinant drift at bay") {
  SplitMix64 rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Mat2> factors;
    const int count = 8 + static_cast<int>(rng.below(57));  // up to 64
    Mat2 frame = Mat2::identity();
    for (int k = 0; k < count; ++k) {
      const Mat2 t = Mat2::diag_translation(rng.uniform(0.1, 4.0));
      const Mat2 s{1.0, rng.uniform(-2.0, 2.0), 0.0, 1.0};
      factors.push_back(conjugate(frame, t));
      frame = frame * s;
    }
    const Mat2 prod = product_renormalized(factors.begin(), factors.end());
    REQUIRE(std::abs(static_cast<double>(prod.det()) - 1.0) <= 1e-6);
  }
}

TEST_CASE("axis twisting is additive and extends translation length") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const double ell = rng.uniform(0.5, 8.0);
    Mat2 h{1.0, rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), 0.0};
    h.d = (1.0 + h.b * h.c) / h.a;
    const Mat2 m = conjugate(h, Mat2::diag_translation(ell));

    // time-0 twist is the identity
    const Mat2 zero = twist_along_axis(m, 0.0);
    REQUIRE(std::abs(static_cast<double>(zero.a) - 1.0) <= 1e-12);
    REQUIRE(std::abs(static_cast<double>(zero.b)) <= 1e-12);
    REQUIRE(std::abs(static_cast<double>(zero.c)) <= 1e-12);

    // composing the twist with the element shifts the translation length
    const double tau_pos = rng.uniform(0.1, 3.0);
    const Mat2 longer = twist_along_axis(m, tau_pos) * m;
    REQUIRE(length_from_trace(longer.trace()) ==
            Catch::Approx(ell + tau_pos).margin(1e-9));
    const double tau_neg = -(ell - 0.3);
    const Mat2 shorter = twist_along_axis(m, tau_neg) * m;
    REQUIRE(length_from_trace(shorter.trace()) ==
            Catch::Approx(0.3).margin(1e-9));

    // additivity in tau
    const Mat2 ab = twist_along_axis(m, 0.7) * twist_along_axis(m, 0.55);
    const Mat2 sum = twist_along_axis(m, 1.25);
    REQUIRE(std::abs(static_cast<double>(ab.a - sum.a)) <= 1e-11);
    REQUIRE(std::abs(static_cast<double>(ab.b - sum.b)) <= 1e-11);
    REQUIRE(std::abs(static_cast<double>(ab.c - sum.c)) <= 1e-11);
    REQUIRE(std::abs(static_cast<double>(ab.d - sum.d)) <= 1e-11);
  }
}
