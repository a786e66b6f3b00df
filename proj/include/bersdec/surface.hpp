#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bersdec/curves.hpp"
#include "bersdec/errors.hpp"
#include "bersdec/kernel.hpp"
#include "bersdec/mat2.hpp"

namespace bersdec {

enum class PunctureKind { Cusp, ConePi, Boundary };

inline const char* puncture_kind_name(PunctureKind k) {
  switch (k) {
    case PunctureKind::Cusp: return "cusp";
    case PunctureKind::ConePi: return "cone_pi";
    case PunctureKind::Boundary: return "boundary";
  }
  return "?";
}

struct Puncture {
  PunctureKind kind = PunctureKind::Cusp;
  double length = 0.0;  // geodesic boundary length; used only for Boundary
  bool operator==(const Puncture& o) const {
    return kind == o.kind && length == o.length;
  }
};

struct FNCoordinate {
  double length = 0.0;
  double twist = 0.0;
  bool operator==(const FNCoordinate& o) const = default;
};

// Quarter-exponential of a length. Every derived quantity of a curve of
// length ell (pants radii, half-traces, eigenvalues) is computed
// algebraically from this one value, so the identities between them hold at
// full matrix precision instead of disagreeing by independent rounding.
inline qreal quarter_exp(double ell) { return std::exp(ell / 4.0); }

// Half-trace parameter of a boundary item: 1 for a cusp, 0 for an angle-pi
// cone point, cosh(L/2) for a geodesic of length L.
inline qreal kappa_of_length(double ell) {
  const qreal u2 = quarter_exp(ell) * quarter_exp(ell);
  return (u2 + 1 / u2) / 2;
}

inline qreal kappa_of(const Puncture& p) {
  switch (p.kind) {
    case PunctureKind::Cusp: return 1.0;
    case PunctureKind::ConePi: return 0.0;
    case PunctureKind::Boundary: return kappa_of_length(p.length);
  }
  return 1.0;
}

// Canonical hyperbolic pants with seam reflections fixed on concentric
// circles: the third boundary is exactly diag(e^{l/2}, e^{-l/2}) and the
// first two items have traces +2*kappa1 and -2*kappa2.
struct CanonicalPants {
  Mat2 x, y;  // x*y == diag_translation(ell) by construction
};

inline Mat2 circle_reflection(qreal center, qreal radius) {
  return Mat2{center / radius, (radius * radius - center * center) / radius,
              1 / radius, -center / radius};
}

inline CanonicalPants canonical_pants(qreal kappa1, qreal kappa2, double ell) {
  if (!(ell > 0.0)) fail(ErrorCode::DegenerateLength, "pants seam length must be positive");
  const qreal r1 = quarter_exp(ell);
  const qreal r3 = 1 / r1;
  const Mat2 m1 = circle_reflection(0.0, r1);
  const Mat2 m3 = circle_reflection(0.0, r3);
  Mat2 m2;
  if (kappa1 == 0.0 && kappa2 == 0.0) {
    m2 = Mat2{-1.0, 0.0, 0.0, 1.0};  // reflection in the vertical line x = 0
  } else {
    const qreal rho = (r1 * r1 - r3 * r3) / (2 * (r1 * kappa1 + r3 * kappa2));
    const qreal c = qsqrt(rho * rho + r3 * r3 + 2 * rho * r3 * kappa2);
    m2 = circle_reflection(c, rho);
  }
  return CanonicalPants{m1 * m2, m2 * m3};
}

struct Surface {
  int n = 0;
  std::vector<Puncture> punctures;      // size n
  std::vector<Range> reference;         // n-3 reference ranges
  std::vector<FNCoordinate> fn;         // aligned with reference
  std::vector<Mat2> gens;               // 1-based; gens[1..n]

  const FNCoordinate& fn_of(const Range& r) const {
    for (std::size_t i = 0; i < reference.size(); ++i)
      if (reference[i] == r) return fn[i];
    fail(ErrorCode::InvalidLaminarFamily,
         "range [" + std::to_string(r.lo) + "," + std::to_string(r.hi) +
             "] is not a reference curve");
  }

  int reference_index(const Range& r) const {  // 1-based; 0 if absent
    for (std::size_t i = 0; i < reference.size(); ++i)
      if (reference[i] == r) return static_cast<int>(i) + 1;
    return 0;
  }
};

inline Mat2 word_matrix(const Surface& s, const Word& w) {
  std::vector<Mat2> factors;
  factors.reserve(w.size());
  for (int letter : w) {
    const int m = std::abs(letter);
    if (m < 1 || m > s.n)
      fail(ErrorCode::ParseError, "word letter " + std::to_string(letter) +
                                      " out of range for n=" + std::to_string(s.n));
    factors.push_back(letter > 0 ? s.gens[m] : s.gens[m].inverse());
  }
  if (factors.empty()) return Mat2::identity();
  return product_renormalized(factors.begin(), factors.end());
}

inline double curve_length(const Surface& s, const CurveClass& c) {
  return length_from_trace(word_matrix(s, c.word).trace());
}

namespace detail {

// Laminar forest node: either a leaf puncture or a reference range.
struct TreeItem {
  bool is_range = false;
  Range range{};
  int leaf = 0;
};

struct TreeNode {
  Range range{};           // meaningful for non-root nodes
  bool is_root = false;
  std::vector<TreeItem> items;  // immediate children, planar order
};

// Builds the nesting forest of the reference family. Root children are the
// maximal ranges plus uncovered singletons of 1..n-1 plus the singleton {n};
// every range node has exactly two child items.
struct LaminarTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int node_of_range(const Range& r) const {
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (nodes[i].range == r) return static_cast<int>(i);
    return -1;
  }
};

inline LaminarTree build_laminar_tree(int n, const std::vector<Range>& reference) {
  validate_reference(n, reference);
  std::vector<Range> sorted = reference;
  std::sort(sorted.begin(), sorted.end(), [](const Range& a, const Range& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.size() > b.size();
  });

  LaminarTree tree;
  tree.nodes.resize(1 + sorted.size());
  tree.nodes[0].is_root = true;
  for (std::size_t i = 0; i < sorted.size(); ++i) tree.nodes[i + 1].range = sorted[i];

  auto fill_items = [&](TreeNode& node, int lo, int hi) {
    int pos = lo;
    while (pos <= hi) {
      // the largest reference range starting at pos and contained in [lo,hi]
      int best = -1;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].lo == pos && sorted[i].hi <= hi &&
            !(node.is_root == false && sorted[i] == node.range) &&
            !(sorted[i].lo == lo && sorted[i].hi == hi && !node.is_root)) {
          if (best < 0 || sorted[i].hi > sorted[best].hi) best = static_cast<int>(i);
        }
      }
      if (best >= 0) {
        TreeItem it;
        it.is_range = true;
        it.range = sorted[best];
        node.items.push_back(it);
        pos = sorted[best].hi + 1;
      } else {
        TreeItem it;
        it.leaf = pos;
        node.items.push_back(it);
        pos += 1;
      }
    }
  };

  fill_items(tree.nodes[0], 1, n - 1);
  {
    TreeItem last;
    last.leaf = n;
    tree.nodes[0].items.push_back(last);
  }
  for (std::size_t i = 0; i < sorted.size(); ++i)
    fill_items(tree.nodes[i + 1], sorted[i].lo, sorted[i].hi);

  if (tree.nodes[0].items.size() != 3)
    fail(ErrorCode::InvalidLaminarFamily,
         "family does not cut the sphere into pants (root valence " +
             std::to_string(tree.nodes[0].items.size()) + ")");
  for (std::size_t i = 1; i < tree.nodes.size(); ++i)
    if (tree.nodes[i].items.size() != 2)
      fail(ErrorCode::InvalidLaminarFamily,
           "range node has " + std::to_string(tree.nodes[i].items.size()) +
               " children; expected 2");
  return tree;
}

// Hyperboloid-model point (-v0^2 + v1^2 + v2^2 = -1, v0 > 0).
struct HPoint {
  double v0 = 1.0, v1 = 0.0, v2 = 0.0;
};

inline double minkowski_dot(const HPoint& p, const HPoint& q) {
  return -p.v0 * q.v0 + p.v1 * q.v1 + p.v2 * q.v2;
}

// Base point of a frame: the image of i in the upper half-plane, lifted to
// the hyperboloid.
inline HPoint frame_point(const Mat2& f) {
  const qreal den = f.c * f.c + f.d * f.d;
  const double x = static_cast<double>((f.a * f.c + f.b * f.d) / den);
  const double y = static_cast<double>(f.det() / den);
  return HPoint{(x * x + y * y + 1.0) / (2.0 * y), x / y,
                (x * x + y * y - 1.0) / (2.0 * y)};
}

// Walk distance t from p toward q along the geodesic.
inline HPoint geodesic_step(const HPoint& p, const HPoint& q, double t) {
  const double c = -minkowski_dot(p, q);  // cosh of the distance
  if (!(c > 1.0 + 1e-14)) return p;
  const double sh = std::sqrt(c * c - 1.0);
  const double ct = std::cosh(t), st = std::sinh(t) / sh;
  HPoint r{ct * p.v0 + st * (q.v0 - c * p.v0),
           ct * p.v1 + st * (q.v1 - c * p.v1),
           ct * p.v2 + st * (q.v2 - c * p.v2)};
  const double nn = r.v0 * r.v0 - r.v1 * r.v1 - r.v2 * r.v2;
  const double s = 1.0 / std::sqrt(nn);
  return HPoint{r.v0 * s, r.v1 * s, r.v2 * s};
}

// Approximate min-max center of a point set (iteratively step toward the
// farthest point by a shrinking fraction of the distance). Used to pick a
// numerically balanced gauge: conjugating the holonomy so its base point
// sits at the center keeps matrix entries as small as the geometry allows.
inline HPoint hyperbolic_center(const std::vector<HPoint>& pts) {
  HPoint c = pts.front();
  for (int iter = 1; iter <= 512; ++iter) {
    double worst = 1.0;
    std::size_t far = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = -minkowski_dot(c, pts[i]);
      if (d > worst) {
        worst = d;
        far = i;
      }
    }
    if (worst <= 1.0 + 1e-14) break;
    c = geodesic_step(c, pts[far], std::acosh(worst) / (iter + 1));
  }
  return c;
}

// Isometry sending the base point i to the given hyperboloid point.
inline Mat2 frame_to_point(const HPoint& p) {
  const double y = 1.0 / (p.v0 - p.v2);
  const double x = p.v1 * y;
  const double sy = std::sqrt(y);
  return Mat2{sy, x / sy, 0.0, 1.0 / sy};
}

}  // namespace detail

// Fenchel-Nielsen holonomy builder. Constructs one generator matrix per
// puncture so that the defining relation holds up to sign and every
// reference range's standard word realizes its prescribed length.
inline Surface build_surface(std::vector<Puncture> punctures,
                             std::vector<Range> reference,
                             std::vector<FNCoordinate> fn) {
  Surface s;
  s.n = static_cast<int>(punctures.size());
  if (s.n < 4) fail(ErrorCode::InvalidLaminarFamily, "need at least 4 punctures");
  if (reference.size() != fn.size())
    fail(ErrorCode::InvalidLaminarFamily, "reference/fn size mismatch");
  for (const FNCoordinate& f : fn)
    if (!(f.length > 0.0) || !(f.length < 50.0))
      fail(ErrorCode::DegenerateLength,
           "reference length " + std::to_string(f.length) + " outside (0, 50)");
  for (const Puncture& p : punctures)
    if (p.kind == PunctureKind::Boundary && (!(p.length > 0.0) || !(p.length < 50.0)))
      fail(ErrorCode::DegenerateLength,
           "boundary length " + std::to_string(p.length) + " outside (0, 50)");
  s.punctures = std::move(punctures);
  s.reference = std::move(reference);
  s.fn = std::move(fn);
  s.gens.assign(s.n + 1, Mat2::identity());

  const detail::LaminarTree tree = detail::build_laminar_tree(s.n, s.reference);

  auto item_kappa = [&](const detail::TreeItem& it) {
    return it.is_range ? kappa_of_length(s.fn_of(it.range).length)
                       : kappa_of(s.punctures[it.leaf - 1]);
  };

  // Leaf matrices are sign-normalized so cusp traces are exactly -2.
  auto emit_leaf = [&](int leaf, const Mat2& frame, const Mat2& canonical) {
    Mat2 m = conjugate(frame, canonical);
    if (s.punctures[leaf - 1].kind == PunctureKind::Cusp && m.trace() > 0.0) m = -m;
    s.gens[leaf] = m;
  };

  std::vector<detail::HPoint>* frame_log = nullptr;

  auto emit_item = [&](auto&& recurse, const detail::TreeItem& it, const Mat2& frame,
                       const Mat2& canonical) -> void {
    if (!it.is_range) {
      emit_leaf(it.leaf, frame, canonical);
      return;
    }
    const AxisFrame af = axis_frame(canonical);
    const FNCoordinate& f = s.fn_of(it.range);
    const Mat2 child_frame = frame * af.p * Mat2::diag_translation(f.twist);
    recurse(recurse, it.range, child_frame);
  };

  auto build_node = [&](auto&& self, const Range& r, const Mat2& frame) -> void {
    if (frame_log) frame_log->push_back(detail::frame_point(frame));
    const int idx = tree.node_of_range(r);
    const detail::TreeNode& node = tree.nodes[idx];
    const CanonicalPants cp = canonical_pants(item_kappa(node.items[0]),
                                              item_kappa(node.items[1]),
                                              s.fn_of(r).length);
    emit_item(self, node.items[0], frame, cp.x);
    emit_item(self, node.items[1], frame, cp.y);
  };

  // Root: rotate the three items so the third slot (whose canonical matrix is
  // the exact diagonal (x*y)^{-1}) is hyperbolic: a range or a boundary leaf.
  const detail::TreeNode& root = tree.nodes[0];
  auto hyperbolic = [&](const detail::TreeItem& it) {
    return it.is_range ||
           s.punctures[it.leaf - 1].kind == PunctureKind::Boundary;
  };
  int rot = -1;
  for (int r = 0; r < 3; ++r)
    if (hyperbolic(root.items[(r + 2) % 3])) {
      rot = r;
      break;
    }
  if (rot < 0)
    fail(ErrorCode::InvalidLaminarFamily,
         "root pants has no hyperbolic item; n must be at least 4");
  const detail::TreeItem& ix = root.items[rot % 3];
  const detail::TreeItem& iy = root.items[(rot + 1) % 3];
  const detail::TreeItem& iz = root.items[(rot + 2) % 3];
  const double ell_z = iz.is_range ? s.fn_of(iz.range).length
                                   : s.punctures[iz.leaf - 1].length;
  const CanonicalPants cp = canonical_pants(item_kappa(ix), item_kappa(iy), ell_z);
  const Mat2 z_canonical = (cp.x * cp.y).inverse();

  auto emit_all = [&](const Mat2& base) {
    emit_item(build_node, ix, base, cp.x);
    emit_item(build_node, iy, base, cp.y);
    emit_item(build_node, iz, base, z_canonical);
  };

  // Two passes: the first finds where the pants frames land, the second
  // rebuilds with the base point moved to their approximate center. The
  // conjugated representation is the same surface, but entry magnitudes drop
  // from exp(diameter) to exp(radius), which keeps the defining-relation
  // product well conditioned in double precision.
  {
    std::vector<detail::HPoint> pts{detail::HPoint{}};
    frame_log = &pts;
    emit_all(Mat2::identity());
    frame_log = nullptr;
    const Mat2 balance = detail::frame_to_point(detail::hyperbolic_center(pts));
    emit_all(balance.inverse());
  }

  // Invariants: defining relation to 1e-8, decoration traces to 1e-8,
  // reference lengths to 1e-6 relative.
  {
    std::vector<Mat2> all;
    for (int i = 1; i <= s.n; ++i) all.push_back(s.gens[i]);
    Mat2 rel = product_renormalized(all.begin(), all.end());
    const double off = static_cast<double>(qabs(rel.b) + qabs(rel.c) +
                                           qabs(rel.a - rel.d));
    const double tr = static_cast<double>(qabs(qabs(rel.trace()) - 2.0));
    if (off > 1e-8 || tr > 1e-8)
      fail(ErrorCode::TraceMismatch, "defining relation violated: residual " +
                                         std::to_string(off + tr));
    for (int i = 1; i <= s.n; ++i) {
      const qreal want = 2 * kappa_of(s.punctures[i - 1]);
      if (static_cast<double>(qabs(qabs(s.gens[i].trace()) - want)) > 1e-8)
        fail(ErrorCode::TraceMismatch,
             "puncture " + std::to_string(i) + " trace " +
                 std::to_string(static_cast<double>(s.gens[i].trace())) +
                 " != +-" + std::to_string(static_cast<double>(want)));
    }
    for (std::size_t i = 0; i < s.reference.size(); ++i) {
      const double got =
          length_from_trace(word_matrix(s, standard_word(s.reference[i])).trace());
      const double want = s.fn[i].length;
      if (std::abs(got - want) > 1e-6 * std::max(1.0, want))
        fail(ErrorCode::TraceMismatch,
             "reference curve length " + std::to_string(got) + " != " +
                 std::to_string(want));
    }
  }
  return s;
}

}  // namespace bersdec
