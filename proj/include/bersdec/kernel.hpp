#pragma once

#include <cmath>

#include "bersdec/errors.hpp"
#include "bersdec/mat2.hpp"

namespace bersdec {

// Geodesic length of the isometry with trace t: ell = 2 arccosh(|t|/2).
// Takes the trace at full matrix precision; the returned double length
// loses nothing (relative error of rounding the trace stays bounded on the
// length even near the parabolic threshold).
inline double length_from_trace(qreal t) {
  const qreal at = qabs(t);
  if (!(at > 2.0 + kTraceTol))
    fail(ErrorCode::NonHyperbolicTrace,
         "|trace| = " + std::to_string(static_cast<double>(at)) +
             " is not > 2 + 1e-9");
  // acosh(x) = log(x + sqrt(x^2-1)); do the cancellation-prone part in quad.
  const qreal half = at / 2;
  const qreal w = half - 1 + qsqrt(half * half - 1);
  return 2.0 * std::log1p(static_cast<double>(w));
}

inline double trace_from_length(double ell) {
  return 2.0 * std::cosh(ell / 2.0);
}

// Half-width of the embedded collar around a closed geodesic of length l.
inline double collar_halfwidth(double l) {
  if (!(l > 0.0))
    fail(ErrorCode::DegenerateLength, "collar needs positive length");
  return std::asinh(1.0 / std::sinh(l / 2.0));
}

// Shortest closed geodesic crossing a geodesic of length l_gamma through an
// embedded strip of width l_arc: 2 arccosh(sinh(l_gamma/2) sinh(l_arc/2)).
inline double crossing_length_bound(double l_gamma, double l_arc) {
  const double s = std::sinh(l_gamma / 2.0) * std::sinh(l_arc / 2.0);
  if (!(s > 1.0))
    fail(ErrorCode::DegenerateBound,
         "sinh(l_gamma/2) sinh(l_arc/2) = " + std::to_string(s) + " is not > 1");
  return 2.0 * std::acosh(s);
}

// Side length x0 of the right-angled pentagon with two equal legs whose
// opposite side is l/4: x0 = 2 arcsinh sqrt(cosh(l/8)).
inline double pentagon_side(double l) {
  if (!(l >= 0.0)) fail(ErrorCode::DegenerateLength, "pentagon needs l >= 0");
  return 2.0 * std::asinh(std::sqrt(std::cosh(l / 8.0)));
}

}  // namespace bersdec
