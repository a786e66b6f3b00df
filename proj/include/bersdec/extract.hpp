#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "bersdec/curves.hpp"
#include "bersdec/errors.hpp"
#include "bersdec/kernel.hpp"
#include "bersdec/mat2.hpp"
#include "bersdec/surface.hpp"

namespace bersdec {

// Solves D(-tau) m0 D(tau) = +-target for tau, where D is the diagonal
// translation. Uses the off-diagonal entries, resolving the overall sign by
// trace agreement, and cross-checks the two independent ratio equations.
inline double solve_twist_offset(const Mat2& m0, const Mat2& target) {
  const double tol = 1e-6;
  for (int attempt = 0; attempt < 2; ++attempt) {
    qreal sgn = (qabs(m0.trace() - target.trace()) <=
                 qabs(m0.trace() + target.trace()))
                    ? 1.0
                    : -1.0;
    if (attempt == 1) sgn = -sgn;
    // m(tau).b = m0.b e^{-tau}, m(tau).c = m0.c e^{tau}
    const double rb = static_cast<double>(m0.b / (sgn * target.b));
    const double rc = static_cast<double>((sgn * target.c) / m0.c);
    if (rb > 0.0 && rc > 0.0) {
      const double tb = std::log(rb);
      const double tc = std::log(rc);
      if (std::fabs(tb - tc) <= tol * std::max(1.0, std::fabs(tb)))
        return 0.5 * (tb + tc);
    }
    if (rb > 0.0 && !(qabs(m0.c) > 0.0)) return std::log(rb);
    if (rc > 0.0 && !(qabs(m0.b) > 0.0)) return std::log(rc);
  }
  fail(ErrorCode::TraceMismatch, "twist extraction: off-diagonal ratios inconsistent");
}

// Fenchel-Nielsen data of a fan-decomposed one-ended subgroup: given the
// generator matrices y_1..y_s of a side (in ambient coordinates), recovers
// the lengths of the nested ranges [1..k] and the interior twists, using the
// same canonical-pants frames the builder uses.
struct FanCoordinates {
  std::vector<double> ell;  // ell[k] = length of [1..k], valid for k = 2..s
  std::vector<double> tau;  // tau[k] = twist of [1..k], valid for k = 2..s-1
};

inline FanCoordinates extract_fan(const std::vector<Mat2>& ys,
                                  const std::vector<qreal>& kappas) {
  const int s = static_cast<int>(ys.size());
  if (s < 2 || static_cast<int>(kappas.size()) != s)
    fail(ErrorCode::UnbalancedCut, "fan extraction needs at least 2 letters");

  std::vector<Mat2> prefix(s + 1, Mat2::identity());
  for (int k = 1; k <= s; ++k) prefix[k] = (prefix[k - 1] * ys[k - 1]).renormalized();

  FanCoordinates out;
  out.ell.assign(s + 1, 0.0);
  out.tau.assign(s + 1, 0.0);
  for (int k = 2; k <= s; ++k)
    out.ell[k] = length_from_trace(prefix[k].trace());

  auto kappa_left = [&](int k) {
    return k == 1 ? kappas[0] : kappa_of_length(out.ell[k]);
  };
  auto canon_at = [&](int k) {
    return canonical_pants(kappa_left(k - 1), kappas[k - 1], out.ell[k]);
  };

  if (s == 2) return out;

  // Residual diagonal gauge at the outermost node [1..s].
  Mat2 f = axis_frame(prefix[s]).p;
  {
    const Mat2 m0 = f.inverse() * prefix[s - 1] * f;
    const double sigma = solve_twist_offset(m0, canon_at(s).x);
    f = f * Mat2::diag_translation(sigma);
  }
  for (int k = s; k >= 3; --k) {
    const Mat2 p = axis_frame(canon_at(k).x).p;
    const Mat2 fp = f * p;
    const Mat2 m0 = fp.inverse() * prefix[k - 2] * fp;
    out.tau[k - 1] = solve_twist_offset(m0, canon_at(k - 1).x);
    f = fp * Mat2::diag_translation(out.tau[k - 1]);
  }
  return out;
}

// One side of a separating curve, re-marked as a sphere with two extra cusps
// where the cut circle was capped off.
struct CutSide {
  Surface surface;
  std::vector<int> puncture_map;  // child letter m -> ambient puncture
  std::vector<Word> letter_words; // child letter m -> word in ambient letters
};

struct CutCapResult {
  CutSide a, b;
  double cap_length = 0.0;
};

namespace detail {

inline CutSide build_cut_side(const Surface& s, const std::vector<int>& map,
                              const Decoration& twists) {
  const int m = static_cast<int>(map.size());
  std::vector<Word> words;
  std::vector<Mat2> ys;
  std::vector<qreal> kappas;
  std::vector<Puncture> punctures;
  for (int p : map) {
    Word w = Word{p};
    for (const TwistEntry& e : twists) w = twist_word(w, e.along, e.power);
    ys.push_back(word_matrix(s, w));
    words.push_back(std::move(w));
    kappas.push_back(kappa_of(s.punctures[p - 1]));
    punctures.push_back(s.punctures[p - 1]);
  }
  punctures.push_back(Puncture{PunctureKind::Cusp, 0.0});
  punctures.push_back(Puncture{PunctureKind::Cusp, 0.0});

  const FanCoordinates fan = extract_fan(ys, kappas);
  std::vector<Range> reference;
  std::vector<FNCoordinate> fn;
  for (int k = 2; k <= m; ++k) {
    reference.push_back(Range{1, k});
    fn.push_back(FNCoordinate{fan.ell[k], k == m ? 0.0 : fan.tau[k]});
  }
  CutSide side;
  side.surface = build_surface(std::move(punctures), std::move(reference), std::move(fn));
  side.puncture_map = map;
  side.letter_words = std::move(words);

  // The rebuilt side must be trace-equivalent to the measured matrices:
  // single letters and all pairwise products, compared by |trace| since the
  // lift of each generator is only defined up to sign.
  for (int u = 1; u <= m; ++u) {
    for (int v = u; v <= m; ++v) {
      const Mat2 my = u == v ? ys[u - 1] : ys[u - 1] * ys[v - 1];
      const Mat2 mg = u == v ? side.surface.gens[u]
                             : side.surface.gens[u] * side.surface.gens[v];
      const double want = static_cast<double>(qabs(my.trace()));
      const double got = static_cast<double>(qabs(mg.trace()));
      if (std::fabs(got - want) > 1e-6 * std::max(1.0, want))
        fail(ErrorCode::TraceMismatch,
             "cut side remarking: |tr| of letters " + std::to_string(u) + "," +
                 std::to_string(v) + " moved from " + std::to_string(want) +
                 " to " + std::to_string(got));
    }
  }
  return side;
}

}  // namespace detail

// Cuts the surface along a separating curve with a consecutive support and
// caps both circles with cusps. `side_a` selects which side becomes the
// first child: it must equal the support set or its complement.
inline CutCapResult cut_and_cap(const Surface& s, const CurveClass& gamma,
                                const std::vector<int>& side_a) {
  if (!gamma.support)
    fail(ErrorCode::NonSeparatingWord, "cut curve carries no support range");
  const Range r = *gamma.support;
  const int n = s.n;
  if (r.lo < 1 || r.hi > n - 1 || r.size() < 2 || r.size() > n - 2)
    fail(ErrorCode::NonSeparatingWord,
         "cut support [" + std::to_string(r.lo) + "," + std::to_string(r.hi) +
             "] does not split into two admissible sides");

  std::vector<int> support_side, complement_side;
  for (int m = 0; m < r.size(); ++m) support_side.push_back(r.lo + m);
  for (int m = 1; m <= n - r.size(); ++m)
    complement_side.push_back((r.hi + m - 1) % n + 1);

  std::vector<int> sa = side_a;
  std::sort(sa.begin(), sa.end());
  std::vector<int> sup_sorted = support_side;
  std::vector<int> comp_sorted = complement_side;
  std::sort(comp_sorted.begin(), comp_sorted.end());

  CutCapResult out;
  if (sa == sup_sorted) {
    out.a = detail::build_cut_side(s, support_side, gamma.twists);
    out.b = detail::build_cut_side(s, complement_side, gamma.twists);
  } else if (sa == comp_sorted) {
    out.a = detail::build_cut_side(s, complement_side, gamma.twists);
    out.b = detail::build_cut_side(s, support_side, gamma.twists);
  } else {
    fail(ErrorCode::UnbalancedCut,
         "requested side is neither the support side nor its complement");
  }
  out.cap_length = curve_length(s, gamma);

  const double got_a = out.a.surface.fn.back().length;
  const double got_b = out.b.surface.fn.back().length;
  if (std::fabs(got_a - out.cap_length) > 1e-6 * std::max(1.0, out.cap_length) ||
      std::fabs(got_b - out.cap_length) > 1e-6 * std::max(1.0, out.cap_length))
    fail(ErrorCode::TraceMismatch, "cap circle length disagrees between sides");
  return out;
}

}  // namespace bersdec
