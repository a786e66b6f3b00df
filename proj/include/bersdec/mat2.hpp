#pragma once

#include <cmath>
#include <cstdlib>

#include "bersdec/errors.hpp"

namespace bersdec {

inline constexpr double kTraceTol = 1e-9;

// Scalar type for holonomy matrices. Surfaces with short reference curves
// have deep collars, so generator entries and word-product intermediates
// span enough orders of magnitude that double-precision products lose the
// defining relation entirely; quad precision keeps every length and
// invariant far inside the library's tolerances.
using qreal = __float128;

inline qreal qabs(qreal x) { return x < 0 ? -x : x; }

// sqrt on qreal without a libquadmath dependency: Newton from a double seed
// (two steps reach full quad precision).
inline qreal qsqrt(qreal x) {
  if (!(x > 0)) return 0;
  qreal s = std::sqrt(static_cast<double>(x));
  s = 0.5 * (s + x / s);
  s = 0.5 * (s + x / s);
  return s;
}

// Real 2x2 matrix. Orientation-preserving isometries carry det = +1,
// reflections det = -1; long products are renormalized back to |det| = 1.
struct Mat2 {
  qreal a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return Mat2{}; }

  static Mat2 diag_translation(double ell) {
    const qreal e = std::exp(ell / 2.0);
    return Mat2{e, 0.0, 0.0, 1.0 / e};
  }

  qreal trace() const { return a + d; }
  qreal det() const { return a * d - b * c; }

  Mat2 operator*(const Mat2& o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
  }

  Mat2 operator-() const { return Mat2{-a, -b, -c, -d}; }

  Mat2 inverse() const {
    const qreal dt = det();
    return Mat2{d / dt, -b / dt, -c / dt, a / dt};
  }

  // Rescale so |det| returns to 1; used every few factors in long products
  // to keep determinant drift negligible.
  Mat2 renormalized() const {
    const qreal s = qsqrt(qabs(det()));
    return Mat2{a / s, b / s, c / s, d / s};
  }
};

inline Mat2 conjugate(const Mat2& g, const Mat2& m) {
  return g * m * g.inverse();
}

// Product of a word of matrices, renormalizing every 8 factors.
template <typename It>
Mat2 product_renormalized(It first, It last) {
  Mat2 acc = Mat2::identity();
  int since = 0;
  for (It it = first; it != last; ++it) {
    acc = acc * (*it);
    if (++since == 8) {
      acc = acc.renormalized();
      since = 0;
    }
  }
  return acc.renormalized();
}

struct AxisFrame {
  Mat2 p;       // det +1, columns = expanding/contracting eigenvectors
  double ell;   // translation length, > 0
  int eps;      // sign of the trace
};

// Deterministic eigen-frame of a hyperbolic element: p^{-1} (eps*m) p equals
// diag(e^{ell/2}, e^{-ell/2}). Column scaling and signs are pinned so the
// same matrix always yields the same frame.
inline AxisFrame axis_frame(const Mat2& m) {
  const qreal t = m.trace();
  if (qabs(t) <= 2.0 + kTraceTol)
    fail(ErrorCode::EllipticAxis, "matrix trace magnitude <= 2, no axis");
  const int eps = t >= 0 ? 1 : -1;
  const Mat2 n{eps * m.a, eps * m.b, eps * m.c, eps * m.d};
  const qreal half = qabs(t) / 2;
  const double ell = 2.0 * std::acosh(static_cast<double>(half));
  const qreal lp = half + qsqrt(half * half - 1);
  const qreal lm = 1 / lp;

  const qreal scale = qabs(n.a) + qabs(n.b) + qabs(n.c) + qabs(n.d);
  auto eigvec = [&](qreal lam, qreal* x, qreal* y) {
    // Candidate eigenvectors (b, lam-a) and (lam-d, c); take the larger.
    const qreal n1 = qabs(n.b) + qabs(lam - n.a);
    const qreal n2 = qabs(lam - n.d) + qabs(n.c);
    if (n1 < 1e-14 * scale && n2 < 1e-14 * scale) {
      // Essentially diagonal: eigenvectors are the coordinate axes.
      if ((n.a >= n.d) == (lam >= 1)) {
        *x = 1.0; *y = 0.0;
      } else {
        *x = 0.0; *y = 1.0;
      }
      return;
    }
    if (n1 >= n2) {
      *x = n.b; *y = lam - n.a;
    } else {
      *x = lam - n.d; *y = n.c;
    }
    const qreal norm = qsqrt(*x * *x + *y * *y);
    *x /= norm; *y /= norm;
    const qreal lead = qabs(*x) >= qabs(*y) ? *x : *y;
    if (lead < 0) { *x = -*x; *y = -*y; }
  };

  qreal px, py, qx, qy;
  eigvec(lp, &px, &py);
  eigvec(lm, &qx, &qy);
  qreal det0 = px * qy - py * qx;
  if (det0 < 0) { qx = -qx; qy = -qy; det0 = -det0; }
  const qreal s = qsqrt(det0);
  Mat2 p{px / s, qx / s, py / s, qy / s};
  return AxisFrame{p, ell, eps};
}

// Time-tau translation along the axis of a hyperbolic element. Independent
// of the eigen-frame gauge, additive in tau, identity at tau = 0.
inline Mat2 twist_along_axis(const Mat2& m, double tau) {
  const AxisFrame f = axis_frame(m);
  return f.p * Mat2::diag_translation(tau) * f.p.inverse();
}

}  // namespace bersdec
