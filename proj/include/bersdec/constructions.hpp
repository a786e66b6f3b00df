#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bersdec/curves.hpp"
#include "bersdec/decomp.hpp"
#include "bersdec/errors.hpp"
#include "bersdec/kernel.hpp"
#include "bersdec/surface.hpp"

namespace bersdec {

// ---------------------------------------------------------------------------
// Hairy sphere: a chain of 2p^2 pentagon-built cylinders closed into a
// cylinder with two long boundary geodesics, capped by two pairs of pants.
// Every pants decomposition of the resulting (2p^2+4)-boundary sphere is
// forced to contain a curve of length >= 4*p*x0.
// ---------------------------------------------------------------------------

struct HairyParams {
  int p = 0;
  double ell = 0.0;
  double x0 = 0.0;
  int boundary_count = 0;
  double rectangle_long = 0.0;
  double rectangle_short = 0.0;
  // The three ways a decomposition curve can interact with the two long
  // boundary curves, and the length each case forces.
  double case_equal_curve = 0.0;
  double case_crossing = 0.0;
  double case_separating = 0.0;
  double lower_bound = 0.0;
};

inline HairyParams hairy_constants(int p, double ell) {
  if (p < 1) fail(ErrorCode::DomainError, "hairy_constants: requires p >= 1");
  if (!(ell >= 0))
    fail(ErrorCode::DomainError, "hairy_constants: requires ell >= 0");
  HairyParams h;
  h.p = p;
  h.ell = ell;
  h.x0 = pentagon_side(ell);
  h.boundary_count = 2 * p * p + 4;
  h.rectangle_long = 4.0 * p * h.x0;
  h.rectangle_short = 2.0 * p * h.x0;
  h.case_equal_curve = 4.0 * p * h.x0;
  h.case_crossing = 2.0 * (2.0 * p * h.x0);
  h.case_separating = 2.0 * p * (2.0 * h.x0);
  h.lower_bound = std::min({h.case_equal_curve, h.case_crossing,
                            h.case_separating});
  return h;
}

// ---------------------------------------------------------------------------
// Separation check: on a sphere with n > 5 marked points, fix two disjoint
// curves alpha and beta that each cut off a pair of pants.  Every pants
// decomposition must contain a curve that (i) equals alpha or beta,
// (ii) crosses both, or (iii) separates alpha from beta.  Decompositions are
// enumerated as unrooted trivalent trees with labeled leaves; curves are the
// leaf bipartitions of internal edges, and the three conditions are decided
// on bipartitions.
// ---------------------------------------------------------------------------

struct SeparationReport {
  int n = 0;
  long trees_checked = 0;
  long pairs_checked = 0;
  long counterexamples = 0;
  std::string first_counterexample;
  bool pass = false;
};

namespace detail {

// All unrooted trivalent trees with leaves 1..n, built by inserting leaf
// k into every edge of each tree on 1..k-1.  Each tree is reported as the
// list of its internal-edge leaf bipartitions (one side, as a bitmask with
// bit i-1 for leaf i).
inline std::vector<std::vector<std::uint32_t>> trivalent_tree_splits(int n) {
  struct Tree {
    // Edges as endpoint pairs; leaves are 1..n, internal nodes n+1,...
    std::vector<std::pair<int, int>> edges;
    int next_internal = 0;
  };
  std::vector<Tree> trees;
  {
    Tree t;
    t.next_internal = n + 1;
    const int c = t.next_internal++;
    t.edges = {{c, 1}, {c, 2}, {c, 3}};
    trees.push_back(std::move(t));
  }
  for (int leaf = 4; leaf <= n; ++leaf) {
    std::vector<Tree> next;
    next.reserve(trees.size() * (2 * leaf - 5));
    for (const Tree& t : trees) {
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        Tree u = t;
        const auto [a, b] = u.edges[e];
        const int mid = u.next_internal++;
        u.edges[e] = {a, mid};
        u.edges.push_back({mid, b});
        u.edges.push_back({mid, leaf});
        next.push_back(std::move(u));
      }
    }
    trees = std::move(next);
  }

  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(trees.size());
  const int max_node = 2 * n;  // leaves 1..n, internal n+1..2n-2
  std::vector<std::vector<int>> adj(max_node + 1);
  for (const Tree& t : trees) {
    for (auto& a : adj) a.clear();
    for (auto [a, b] : t.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<std::uint32_t> splits;
    for (auto [a, b] : t.edges) {
      if (a <= n || b <= n) continue;  // pendant edge, peripheral split
      // Leaves on the `a` side of edge (a,b).
      std::uint32_t mask = 0;
      std::vector<int> stack = {a};
      std::vector<char> seen(max_node + 1, 0);
      seen[a] = 1;
      seen[b] = 1;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (v <= n) mask |= 1u << (v - 1);
        for (int w : adj[v])
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      splits.push_back(mask);
    }
    out.push_back(std::move(splits));
  }
  return out;
}

inline bool mask_crosses(std::uint32_t g, std::uint32_t x, std::uint32_t full) {
  const std::uint32_t gc = full & ~g;
  const std::uint32_t xc = full & ~x;
  return (g & x) && (g & xc) && (gc & x) && (gc & xc);
}

inline bool separation_holds(const std::vector<std::uint32_t>& splits,
                             std::uint32_t a, std::uint32_t b,
                             std::uint32_t full) {
  const std::uint32_t ac = full & ~a;
  const std::uint32_t bc = full & ~b;
  for (std::uint32_t g : splits) {
    if (g == a || g == ac || g == b || g == bc) return true;
    if (mask_crosses(g, a, full) && mask_crosses(g, b, full)) return true;
    const std::uint32_t gc = full & ~g;
    if (((a & ~g) == 0 && (b & ~gc) == 0) || ((a & ~gc) == 0 && (b & ~g) == 0))
      return true;
  }
  return false;
}

inline std::uint32_t pair_mask(const std::vector<int>& pair, int n,
                               const char* name) {
  if (pair.size() != 2 || pair[0] == pair[1])
    fail(ErrorCode::DomainError,
         std::string(name) + " must name two distinct punctures");
  std::uint32_t m = 0;
  for (int v : pair) {
    if (v < 1 || v > n)
      fail(ErrorCode::DomainError,
           std::string(name) + " puncture index out of range");
    m |= 1u << (v - 1);
  }
  return m;
}

inline std::string mask_to_string(std::uint32_t m, int n) {
  std::string s = "{";
  for (int i = 1; i <= n; ++i)
    if (m & (1u << (i - 1))) {
      if (s.size() > 1) s += ",";
      s += std::to_string(i);
    }
  return s + "}";
}

inline void check_separation_n(int n) {
  if (n <= 5 || n > 9)
    fail(ErrorCode::NTooLarge,
         "separation check requires 5 < n <= 9, got " + std::to_string(n));
}

}  // namespace detail

inline SeparationReport check_separation_lemma(int n,
                                               const std::vector<int>& alpha,
                                               const std::vector<int>& beta) {
  detail::check_separation_n(n);
  const std::uint32_t full = (1u << n) - 1;
  const std::uint32_t a = detail::pair_mask(alpha, n, "alpha");
  const std::uint32_t b = detail::pair_mask(beta, n, "beta");
  if (a & b) fail(ErrorCode::DomainError, "alpha and beta must be disjoint");

  SeparationReport rep;
  rep.n = n;
  rep.pairs_checked = 1;
  for (const auto& splits : detail::trivalent_tree_splits(n)) {
    ++rep.trees_checked;
    if (!detail::separation_holds(splits, a, b, full)) {
      ++rep.counterexamples;
      if (rep.first_counterexample.empty()) {
        std::string s = "alpha=" + detail::mask_to_string(a, n) +
                        " beta=" + detail::mask_to_string(b, n) + " tree={";
        for (std::size_t i = 0; i < splits.size(); ++i)
          s += (i ? " " : "") + detail::mask_to_string(splits[i], n);
        rep.first_counterexample = s + "}";
      }
    }
  }
  rep.pass = rep.counterexamples == 0;
  return rep;
}

// Exhaustive variant: every decomposition against every disjoint
// pants-bounding pair (alpha, beta).
inline SeparationReport check_separation_lemma(int n) {
  detail::check_separation_n(n);
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> pair_masks;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      pair_masks.push_back((1u << (i - 1)) | (1u << (j - 1)));

  SeparationReport rep;
  rep.n = n;
  const auto trees = detail::trivalent_tree_splits(n);
  rep.trees_checked = long(trees.size());
  for (std::size_t i = 0; i < pair_masks.size(); ++i)
    for (std::size_t j = i + 1; j < pair_masks.size(); ++j) {
      const std::uint32_t a = pair_masks[i];
      const std::uint32_t b = pair_masks[j];
      if (a & b) continue;
      ++rep.pairs_checked;
      for (const auto& splits : trees)
        if (!detail::separation_holds(splits, a, b, full)) {
          ++rep.counterexamples;
          if (rep.first_counterexample.empty()) {
            std::string s = "alpha=" + detail::mask_to_string(a, n) +
                            " beta=" + detail::mask_to_string(b, n) + " tree={";
            for (std::size_t k = 0; k < splits.size(); ++k)
              s += (k ? " " : "") + detail::mask_to_string(splits[k], n);
            rep.first_counterexample = s + "}";
          }
        }
    }
  rep.pass = rep.counterexamples == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Order-2 quotient lift: a pants decomposition of the (2g+2)-marked sphere
// with angle-pi cone points lifts through the branched double cover to a
// multicurve on the genus-g surface.  A curve lifts according to the parity
// of the cone points it encloses; complement pieces lift to 3- or 4-holed
// spheres, and each 4-holed piece contributes one completion curve.
// ---------------------------------------------------------------------------

enum class LiftTag { DoubledArc, OddOdd, EvenEven };

inline const char* lift_tag_name(LiftTag t) {
  switch (t) {
    case LiftTag::DoubledArc: return "doubled_arc";
    case LiftTag::OddOdd: return "odd_odd";
    case LiftTag::EvenEven: return "even_even";
  }
  return "unknown";
}

struct LiftedCurve {
  Range support;
  LiftTag tag = LiftTag::DoubledArc;
  double base_length = 0.0;
  std::vector<double> lift_lengths;
  // True when the support leaves only two cone points outside: the two
  // parallel lifts cobound an annulus upstairs and collapse to one class.
  bool deduplicated = false;
};

struct LiftPiece {
  std::vector<int> boundary_curves;  // indices into lifts; -1 never occurs
  int holes = 3;                     // 3 or 4
  int cone_points = 0;               // cone points of the base piece
  bool involution_invariant = true;  // false for one of a swapped 3-holed pair
  double completion_bound = 0.0;     // 4-holed only: 2*max boundary lift + 12
};

struct LiftReport {
  int g = 0;
  std::vector<LiftedCurve> lifts;
  std::vector<LiftPiece> pieces;
  double base_max = 0.0;  // longest input curve
  double mu_max = 0.0;    // longest lifted curve
  int completion_count = 0;
  int curve_count = 0;  // lift classes after dedup + completions
  double total_bound = 0.0;
};

inline LiftReport hyperelliptic_lift(int g, const std::vector<Range>& supports,
                                     const std::vector<double>& lengths) {
  if (g < 2)
    fail(ErrorCode::DomainError, "hyperelliptic_lift: requires g >= 2");
  const int n = 2 * g + 2;
  if (int(supports.size()) != 2 * g - 1)
    fail(ErrorCode::WrongCurveCount,
         "expected " + std::to_string(2 * g - 1) + " curves on the " +
             std::to_string(n) + "-marked sphere, got " +
             std::to_string(supports.size()));
  if (lengths.size() != supports.size())
    fail(ErrorCode::WrongCurveCount,
         "lengths count does not match curve count");
  validate_reference(n, supports);

  LiftReport rep;
  rep.g = g;

  for (std::size_t i = 0; i < supports.size(); ++i) {
    const Range r = supports[i];
    const double ell = lengths[i];
    LiftedCurve lc;
    lc.support = r;
    lc.base_length = ell;
    if (r.size() == 2) {
      lc.tag = LiftTag::DoubledArc;
      lc.lift_lengths = {ell};
    } else if (r.size() % 2 == 1) {
      lc.tag = LiftTag::OddOdd;
      lc.lift_lengths = {2.0 * ell};
    } else {
      lc.tag = LiftTag::EvenEven;
      lc.lift_lengths = {ell, ell};
      lc.deduplicated = (r.size() == n - 2);
    }
    rep.base_max = std::max(rep.base_max, ell);
    for (double l : lc.lift_lengths) rep.mu_max = std::max(rep.mu_max, l);
    rep.lifts.push_back(std::move(lc));
  }

  // Complement pieces of the laminar family: one inside each curve (bounded
  // by it, its immediate children, and any marked points it covers directly),
  // plus the outermost piece.  A piece covering two marked points and nothing
  // else is a degenerate disk with two cone points; it vanishes upstairs and
  // is skipped.
  auto odd = [&](int curve_index) {
    return supports[curve_index].size() % 2 == 1;
  };
  auto boundary_lift_max = [&](const std::vector<int>& bd) {
    double m = 0.0;
    for (int ci : bd)
      for (double l : rep.lifts[ci].lift_lengths) m = std::max(m, l);
    return m;
  };
  auto emit_piece = [&](const std::vector<int>& boundary, int cones) {
    const int slots = int(boundary.size()) + cones;
    if (slots != 3)
      fail(ErrorCode::InvalidLaminarFamily,
           "complement piece has " + std::to_string(slots) +
               " boundary slots, expected 3");
    if (cones == 2) return;  // degenerate two-cone disk, vanishes upstairs
    int odd_count = 0;
    for (int ci : boundary) odd_count += odd(ci) ? 1 : 0;
    if (cones == 1) {
      if (odd_count != 1)
        fail(ErrorCode::ParityInconsistency,
             "cone cylinder with " + std::to_string(odd_count) +
                 " odd boundary curves");
      LiftPiece p;
      p.boundary_curves = boundary;
      p.holes = 3;
      p.cone_points = 1;
      p.involution_invariant = true;
      rep.pieces.push_back(std::move(p));
      return;
    }
    if (odd_count == 2) {
      LiftPiece p;
      p.boundary_curves = boundary;
      p.holes = 4;
      p.cone_points = 0;
      p.involution_invariant = true;
      p.completion_bound = 2.0 * boundary_lift_max(boundary) + 12.0;
      rep.pieces.push_back(std::move(p));
      ++rep.completion_count;
      return;
    }
    if (odd_count != 0)
      fail(ErrorCode::ParityInconsistency,
           "pants piece with " + std::to_string(odd_count) +
               " odd boundary curves");
    for (int copy = 0; copy < 2; ++copy) {
      LiftPiece p;
      p.boundary_curves = boundary;
      p.holes = 3;
      p.cone_points = 0;
      p.involution_invariant = false;
      rep.pieces.push_back(std::move(p));
    }
  };

  // Immediate parent of each curve: the smallest strictly containing range.
  std::vector<int> parent(supports.size(), -1);
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = 0; j < supports.size(); ++j) {
      if (i == j || !supports[j].contains(supports[i])) continue;
      if (parent[i] == -1 ||
          supports[j].size() < supports[parent[i]].size())
        parent[i] = int(j);
    }
  std::vector<std::vector<int>> children(supports.size());
  std::vector<int> roots;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    if (parent[i] == -1)
      roots.push_back(int(i));
    else
      children[parent[i]].push_back(int(i));
  }

  for (std::size_t i = 0; i < supports.size(); ++i) {
    int covered = 0;
    for (int c : children[i]) covered += supports[c].size();
    const int direct = supports[i].size() - covered;
    std::vector<int> boundary = {int(i)};
    boundary.insert(boundary.end(), children[i].begin(), children[i].end());
    emit_piece(boundary, direct);
  }
  {
    int covered = 0;
    for (int r : roots) covered += supports[r].size();
    emit_piece(roots, n - covered);
  }

  int classes = rep.completion_count;
  for (const LiftedCurve& lc : rep.lifts)
    classes += lc.deduplicated ? 1 : int(lc.lift_lengths.size());
  rep.curve_count = classes;
  if (classes != 3 * g - 3)
    fail(ErrorCode::WrongCurveCount,
         "lift produced " + std::to_string(classes) + " classes, expected " +
             std::to_string(3 * g - 3));

  rep.total_bound = rep.mu_max;
  for (const LiftPiece& p : rep.pieces)
    rep.total_bound = std::max(rep.total_bound, p.completion_bound);
  return rep;
}

inline LiftReport hyperelliptic_lift(int g, const Surface& s,
                                     const PantsDecomposition& p) {
  if (s.n != 2 * g + 2)
    fail(ErrorCode::WrongCurveCount,
         "surface has " + std::to_string(s.n) + " punctures, expected " +
             std::to_string(2 * g + 2));
  for (const Puncture& pt : s.punctures)
    if (pt.kind != PunctureKind::ConePi)
      fail(ErrorCode::ParityInconsistency,
           "quotient sphere must carry angle-pi cone points only");
  std::vector<Range> supports;
  std::vector<double> lengths;
  for (std::size_t i = 0; i < p.curves.size(); ++i) {
    if (!p.curves[i].support)
      fail(ErrorCode::MalformedInstance,
           "curve " + std::to_string(i) + " carries no support range");
    supports.push_back(*p.curves[i].support);
    lengths.push_back(i < p.lengths.size() ? p.lengths[i]
                                           : curve_length(s, p.curves[i]));
  }
  return hyperelliptic_lift(g, supports, lengths);
}

}  // namespace bersdec
