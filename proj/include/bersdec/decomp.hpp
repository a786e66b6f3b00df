#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bersdec/curves.hpp"
#include "bersdec/errors.hpp"
#include "bersdec/extract.hpp"
#include "bersdec/kernel.hpp"
#include "bersdec/surface.hpp"

namespace bersdec {

struct PantsDecomposition {
  std::vector<CurveClass> curves;
  std::vector<double> lengths;
  double max_length = 0.0;
};

struct SplitterResult {
  CurveClass curve;
  double length = 0.0;
  int n_small = 0, n_large = 0;
  bool certified = false;
  double bound = 0.0;
};

struct InsertionOutcome {
  PantsDecomposition family;
  bool contains_gamma = true;
  bool within_additive = true;  // max(P') <= max(P) + len(gamma)
};

struct BersTraceRow {
  int n = 0;
  double splitter_len = 0.0;
  bool certified = false;
  bool insertion_ok = true;
};

struct BersResult {
  PantsDecomposition decomposition;
  double bound = 0.0;
  bool within_bound = false;
  std::vector<BersTraceRow> trace;
};

struct FourHoledResult {
  CurveClass curve;
  double length = 0.0;
  double bound = 0.0;
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Length of the decorated standard curve of each range, or +inf where the
// word is not hyperbolic (such a class cannot join a pants decomposition).
class WeightTable {
 public:
  WeightTable(const Surface& s, const Decoration& d) : s_(&s), d_(&d) {}

  double operator()(const Range& r) const {
    const auto key = std::pair<int, int>{r.lo, r.hi};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    double w = kInf;
    if (r.size() >= 2 && r.size() <= s_->n - 2) {
      try {
        w = curve_length(*s_, apply_decoration(standard_curve(r.lo, r.hi, s_->n), *d_));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonHyperbolicTrace) throw;
      }
    }
    cache_[key] = w;
    return w;
  }

 private:
  const Surface* s_;
  const Decoration* d_;
  mutable std::map<std::pair<int, int>, double> cache_;
};

// Min-max binary subdivision over a tiling of [1..n-1] by atom ranges: picks
// the full subdivision whose heaviest internal range is least. The top
// interval of the tiling never counts (it is either the whole row, which is
// not a curve, or the inserted curve handled separately by the caller).
struct SubdivisionChoice {
  double value = kInf;
  std::vector<Range> ranges;
};

inline SubdivisionChoice best_subdivision(const std::vector<Range>& atoms,
                                          const WeightTable& w) {
  const int k = static_cast<int>(atoms.size());
  std::vector<std::vector<double>> val(k, std::vector<double>(k, -kInf));
  std::vector<std::vector<int>> cut(k, std::vector<int>(k, -1));
  for (int len = 2; len <= k; ++len)
    for (int i = 0; i + len - 1 < k; ++i) {
      const int j = i + len - 1;
      double best = kInf;
      int arg = -1;
      for (int m = i; m < j; ++m) {
        const double v = std::max(val[i][m], val[m + 1][j]);
        if (v < best) {
          best = v;
          arg = m;
        }
      }
      if (!(i == 0 && j == k - 1))
        best = std::max(best, w(Range{atoms[i].lo, atoms[j].hi}));
      val[i][j] = best;
      cut[i][j] = arg;
    }
  SubdivisionChoice out;
  if (k < 2) {
    out.value = -kInf;
    return out;
  }
  out.value = val[0][k - 1];
  // No feasible subdivision: every split has an infinite side, so cut rows
  // are unset. Return the infinite value with no ranges; callers skip it.
  if (!(out.value < kInf)) return out;
  auto collect = [&](auto&& self, int i, int j) -> void {
    if (i >= j) return;
    if (!(i == 0 && j == static_cast<int>(atoms.size()) - 1))
      out.ranges.push_back(Range{atoms[i].lo, atoms[j].hi});
    self(self, i, cut[i][j]);
    self(self, cut[i][j] + 1, j);
  };
  collect(collect, 0, k - 1);
  return out;
}

inline std::vector<Range> singleton_atoms(int lo, int hi) {
  std::vector<Range> atoms;
  for (int m = lo; m <= hi; ++m) atoms.push_back(Range{m, m});
  return atoms;
}

inline PantsDecomposition measure_family(const Surface& s,
                                         const std::vector<Range>& ranges,
                                         const Decoration& d) {
  PantsDecomposition p;
  std::vector<Range> sorted = ranges;
  std::sort(sorted.begin(), sorted.end());
  for (const Range& r : sorted) {
    CurveClass c = apply_decoration(standard_curve(r.lo, r.hi, s.n), d);
    p.lengths.push_back(curve_length(s, c));
    p.curves.push_back(std::move(c));
  }
  p.max_length = *std::max_element(p.lengths.begin(), p.lengths.end());
  return p;
}

// Twist powers to try: a symmetric window around zero and, when an interior
// coordinate suggests unwinding, a window around the unwinding power.
inline std::vector<int> twist_powers(int depth, std::optional<double> unwind) {
  std::vector<int> ks;
  for (int k = -depth; k <= depth; ++k) ks.push_back(k);
  if (unwind) {
    const int k0 = static_cast<int>(std::llround(*unwind));
    for (int k = k0 - depth; k <= k0 + depth; ++k) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

inline double bers_bound_for(const Surface& s) {
  const double pi = std::numbers::pi;
  bool any_boundary = false, all_cone = true;
  double lmax = 0.0;
  for (const Puncture& p : s.punctures) {
    if (p.kind == PunctureKind::Boundary) {
      any_boundary = true;
      lmax = std::max(lmax, p.length);
    }
    if (p.kind != PunctureKind::ConePi) all_cone = false;
  }
  const double n = static_cast<double>(s.n);
  if (any_boundary) {
    const double c = 30.0 * std::sqrt(2.0) + 2.0 * std::sqrt(pi);
    return c * std::sqrt(2.0 * pi * (n - 2.0)) *
           std::sqrt((lmax / (2.0 * pi)) * (lmax / (2.0 * pi)) + 1.0);
  }
  if (all_cone)
    return 10.0 * std::log(6.0 * pi) * std::sqrt(std::max(0.0, n - 4.0));
  return 30.0 * std::sqrt(2.0 * pi * (n - 2.0));
}

}  // namespace detail

// Shortest curve splitting the punctures into two sides whose sizes lie in
// [size_lo, size_hi], over plain range curves and their twists along
// crossing reference curves. The certificate compares against the
// area-based splitter bound for the larger side.
inline SplitterResult find_splitter(const Surface& s, int twist_depth,
                                    int size_lo, int size_hi) {
  const int n = s.n;
  size_lo = std::max(size_lo, 2);
  size_hi = std::min(size_hi, n - 2);
  if (size_lo > size_hi)
    fail(ErrorCode::NoBalancedCandidate,
         "no support size available in the requested window");

  std::optional<SplitterResult> best;
  auto consider = [&](const CurveClass& c) {
    double len;
    try {
      len = curve_length(s, c);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonHyperbolicTrace) return;
      throw;
    }
    if (!best || len < best->length - 1e-15) {
      SplitterResult r;
      r.curve = c;
      r.length = len;
      const int sz = c.support->size();
      r.n_small = std::min(sz, n - sz);
      r.n_large = std::max(sz, n - sz);
      best = r;
    }
  };

  for (int sz = size_lo; sz <= size_hi; ++sz)
    for (int a = 1; a + sz - 1 <= n - 1; ++a) {
      const CurveClass plain = standard_curve(a, a + sz - 1, n);
      consider(plain);
      for (const Range& e : s.reference) {
        if (!e.crosses(*plain.support)) continue;
        for (int k = -twist_depth; k <= twist_depth; ++k) {
          if (k == 0) continue;
          consider(dehn_twist(plain, e, k));
        }
      }
    }
  if (!best)
    fail(ErrorCode::NoBalancedCandidate, "every candidate word was non-hyperbolic");

  const double pi = std::numbers::pi;
  bool any_boundary = false, all_cone = true;
  double lmax = 0.0;
  for (const Puncture& p : s.punctures) {
    if (p.kind == PunctureKind::Boundary) {
      any_boundary = true;
      lmax = std::max(lmax, p.length);
    }
    if (p.kind != PunctureKind::ConePi) all_cone = false;
  }
  const double n2 = static_cast<double>(best->n_large);
  double radicand;
  if (any_boundary)
    radicand = 2.0 * pi * (n2 - 2.0) + n2 * lmax * lmax / (2.0 * pi);
  else if (all_cone)
    radicand = pi * n2 - 4.0 * pi;
  else
    radicand = 2.0 * pi * n2 - 4.0 * pi;
  if (radicand > 0.0) {
    best->bound = 4.0 * std::sqrt(radicand);
    best->certified = best->length <= best->bound + 1e-9;
  } else {
    best->bound = 0.0;
    best->certified = false;
  }
  return *best;
}

// Default window: both sides hold at least a quarter of the punctures.
inline SplitterResult find_splitter(const Surface& s, int twist_depth = 2) {
  const int quarter = (s.n + 3) / 4;
  return find_splitter(s, twist_depth, quarter, s.n - quarter);
}

// Completion of gamma to a full decomposition of cost at most
// max(P) + len(gamma): searches all range skeletons through gamma's support,
// decorated by P's decoration history plus at most one extra reference
// twist, and keeps the min-max choice.
inline InsertionOutcome project_insert_best(const Surface& s,
                                            const PantsDecomposition& p,
                                            const CurveClass& gamma,
                                            int twist_depth) {
  InsertionOutcome out;
  const Word gkey = word_class_key(gamma.word);
  for (const CurveClass& c : p.curves)
    if (word_class_key(c.word) == gkey) {
      out.family = p;
      out.contains_gamma = true;
      out.within_additive = true;
      return out;
    }
  if (!gamma.support)
    fail(ErrorCode::NonSeparatingWord, "insertion curve carries no support range");
  const Range g = *gamma.support;
  const int n = s.n;
  const double glen = curve_length(s, gamma);

  std::vector<Decoration> decos;
  decos.push_back(gamma.twists);
  for (const Range& e : s.reference) {
    bool ok = e.compatible(g);
    for (const TwistEntry& t : gamma.twists)
      if (!e.compatible(t.along)) ok = false;
    if (!ok) continue;
    for (int k = -twist_depth; k <= twist_depth; ++k) {
      if (k == 0) continue;
      decos.push_back(decoration_concat(gamma.twists, TwistEntry{e, k}));
    }
  }

  double best_val = detail::kInf;
  std::vector<Range> best_ranges;
  Decoration best_deco;
  for (const Decoration& d : decos) {
    detail::WeightTable w(s, d);
    const detail::SubdivisionChoice inner =
        detail::best_subdivision(detail::singleton_atoms(g.lo, g.hi), w);
    std::vector<Range> outer_atoms;
    for (int m = 1; m < g.lo; ++m) outer_atoms.push_back(Range{m, m});
    outer_atoms.push_back(g);
    for (int m = g.hi + 1; m <= n - 1; ++m) outer_atoms.push_back(Range{m, m});
    const detail::SubdivisionChoice outer = detail::best_subdivision(outer_atoms, w);
    const double val = std::max({inner.value, outer.value, glen});
    if (val < best_val - 1e-15) {
      best_val = val;
      best_deco = d;
      best_ranges = inner.ranges;
      best_ranges.insert(best_ranges.end(), outer.ranges.begin(), outer.ranges.end());
    }
  }
  if (!(best_val < detail::kInf))
    fail(ErrorCode::NoCompletion, "no hyperbolic completion of the insertion curve");

  // assemble: gamma verbatim plus the decorated completion ranges
  std::vector<std::pair<Range, CurveClass>> members;
  members.push_back({g, gamma});
  for (const Range& r : best_ranges)
    members.push_back(
        {r, apply_decoration(standard_curve(r.lo, r.hi, n), best_deco)});
  std::sort(members.begin(), members.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.family.curves.clear();
  out.family.lengths.clear();
  for (auto& [r, c] : members) {
    out.family.lengths.push_back(curve_length(s, c));
    out.family.curves.push_back(std::move(c));
  }
  out.family.max_length =
      *std::max_element(out.family.lengths.begin(), out.family.lengths.end());
  if (static_cast<int>(out.family.curves.size()) != n - 3)
    fail(ErrorCode::MergeCountMismatch,
         "completion produced " + std::to_string(out.family.curves.size()) +
             " curves, expected " + std::to_string(n - 3));
  out.contains_gamma = true;
  out.within_additive = out.family.max_length <= p.max_length + glen + 1e-9;
  return out;
}

inline PantsDecomposition project_insert_search(const Surface& s,
                                                const PantsDecomposition& p,
                                                const CurveClass& gamma,
                                                int twist_depth) {
  InsertionOutcome out = project_insert_best(s, p, gamma, twist_depth);
  if (!out.within_additive)
    fail(ErrorCode::InsertionBoundViolated,
         "completion max " + std::to_string(out.family.max_length) + " exceeds " +
             std::to_string(p.max_length) + " + " +
             std::to_string(curve_length(s, gamma)));
  return out.family;
}

// Exhaustive short decomposition for small n: all range skeletons, plain or
// twisted once along a reference curve.
inline PantsDecomposition exhaustive_short_decomposition(const Surface& s,
                                                         int twist_depth) {
  const int n = s.n;
  if (n > 9) fail(ErrorCode::NTooLarge, "exhaustive search limited to n <= 9");
  std::vector<Decoration> decos;
  decos.push_back({});
  for (const Range& e : s.reference)
    for (int k = -twist_depth; k <= twist_depth; ++k) {
      if (k == 0) continue;
      decos.push_back({TwistEntry{e, k}});
    }
  double best_val = detail::kInf;
  std::vector<Range> best_ranges;
  Decoration best_deco;
  for (const Decoration& d : decos) {
    detail::WeightTable w(s, d);
    const detail::SubdivisionChoice pick =
        detail::best_subdivision(detail::singleton_atoms(1, n - 1), w);
    if (pick.value < best_val - 1e-15) {
      best_val = pick.value;
      best_ranges = pick.ranges;
      best_deco = d;
    }
  }
  if (!(best_val < detail::kInf))
    fail(ErrorCode::NoCompletion, "no hyperbolic decomposition found");
  return detail::measure_family(s, best_ranges, best_deco);
}

inline BersResult bers_decompose(const Surface& s, int base_n = 5,
                                 int twist_depth = 2) {
  const int n = s.n;
  const int base = std::clamp(base_n, 5, 9);
  BersResult out;
  out.bound = detail::bers_bound_for(s);

  if (n <= base) {
    out.decomposition = exhaustive_short_decomposition(s, twist_depth);
    out.within_bound = out.decomposition.max_length <= out.bound + 1e-9;
    return out;
  }

  const int quarter = (n + 3) / 4;
  const SplitterResult split =
      find_splitter(s, twist_depth, std::max(3, quarter), std::min(n - 3, n - quarter));
  const Range g = *split.curve.support;

  std::vector<int> side_a;
  for (int m = g.lo; m <= g.hi; ++m) side_a.push_back(m);
  const CutCapResult cut = cut_and_cap(s, split.curve, side_a);

  BersTraceRow row;
  row.n = n;
  row.splitter_len = split.length;
  row.certified = split.certified;

  auto complete_side = [&](const CutSide& side, BersResult* sub) -> InsertionOutcome {
    *sub = bers_decompose(side.surface, base_n, twist_depth);
    const int ns = side.surface.n;
    const CurveClass cap = standard_curve(1, ns - 2, ns);
    InsertionOutcome ins = project_insert_best(side.surface, sub->decomposition,
                                               cap, twist_depth);
    return ins;
  };
  BersResult sub_a, sub_b;
  const InsertionOutcome ins_a = complete_side(cut.a, &sub_a);
  const InsertionOutcome ins_b = complete_side(cut.b, &sub_b);
  row.insertion_ok = ins_a.within_additive && ins_b.within_additive;
  out.trace.push_back(row);
  out.trace.insert(out.trace.end(), sub_a.trace.begin(), sub_a.trace.end());
  out.trace.insert(out.trace.end(), sub_b.trace.begin(), sub_b.trace.end());

  // merge: relabel each side's curves back to ambient letters and supports
  auto merge_side = [&](const CutSide& side, const InsertionOutcome& ins) {
    std::vector<CurveClass> merged;
    const int s_letters = static_cast<int>(side.puncture_map.size());
    for (std::size_t ci = 0; ci < ins.family.curves.size(); ++ci) {
      const CurveClass& c = ins.family.curves[ci];
      if (!c.support)
        fail(ErrorCode::MergeCountMismatch, "side curve lost its support range");
      if (c.support->lo == 1 && c.support->hi == s_letters) continue;  // the cap
      if (c.support->hi > s_letters)
        fail(ErrorCode::MergeCountMismatch, "side curve spills onto a cap cusp");
      Word w;
      for (int letter : c.word) {
        const Word& lw = side.letter_words[std::abs(letter) - 1];
        if (letter > 0)
          w.insert(w.end(), lw.begin(), lw.end());
        else {
          const Word inv = word_inverse(lw);
          w.insert(w.end(), inv.begin(), inv.end());
        }
      }
      CurveClass m;
      m.word = word_reduce(w);
      std::vector<int> set;
      for (int q = c.support->lo; q <= c.support->hi; ++q)
        set.push_back(side.puncture_map[q - 1]);
      std::sort(set.begin(), set.end());
      if (!set.empty() && set.back() == n) {
        std::vector<int> comp;
        for (int q = 1; q <= n; ++q)
          if (std::find(set.begin(), set.end(), q) == set.end()) comp.push_back(q);
        set = comp;
      }
      for (std::size_t q = 1; q < set.size(); ++q)
        if (set[q] != set[q - 1] + 1)
          fail(ErrorCode::MergeCountMismatch, "side support does not map to a range");
      m.support = Range{set.front(), set.back()};
      // Sanity check: the ambient word should realize (approximately) the
      // length measured on the cut side.  The side surface is rebuilt from
      // extracted coordinates, so its metric differs from the induced one by
      // roundoff that long twisted words amplify; a loose tolerance still
      // catches any relabeling mistake, which would be off by O(1).
      const double side_len = ins.family.lengths[ci];
      const double ambient_len = curve_length(s, m);
      if (std::fabs(ambient_len - side_len) > 1e-3 * std::max(1.0, side_len))
        fail(ErrorCode::TraceMismatch,
             "merged curve length " + std::to_string(ambient_len) +
                 " disagrees with side measurement " + std::to_string(side_len));
      merged.push_back(std::move(m));
    }
    return merged;
  };

  std::vector<CurveClass> curves = merge_side(cut.a, ins_a);
  std::vector<CurveClass> curves_b = merge_side(cut.b, ins_b);
  curves.insert(curves.end(), curves_b.begin(), curves_b.end());
  curves.push_back(split.curve);
  if (static_cast<int>(curves.size()) != n - 3)
    fail(ErrorCode::MergeCountMismatch,
         "merged " + std::to_string(curves.size()) + " curves, expected " +
             std::to_string(n - 3));
  std::vector<Range> supports;
  for (const CurveClass& c : curves) supports.push_back(*c.support);
  if (!is_laminar(supports))
    fail(ErrorCode::InvalidLaminarFamily, "merged supports are not laminar");

  std::sort(curves.begin(), curves.end(), [](const CurveClass& a, const CurveClass& b) {
    return *a.support < *b.support;
  });
  for (const CurveClass& c : curves) {
    out.decomposition.lengths.push_back(curve_length(s, c));
    out.decomposition.curves.push_back(c);
  }
  out.decomposition.max_length = *std::max_element(
      out.decomposition.lengths.begin(), out.decomposition.lengths.end());
  out.within_bound = out.decomposition.max_length <= out.bound + 1e-9;
  return out;
}

// Shortest essential curve on a 4-holed sphere (boundary length 0 = cusp),
// over the three partition families with twist windows: certified against
// 2 max(b) + 12.
inline FourHoledResult four_holed_short_curve(const std::array<double, 4>& b,
                                              FNCoordinate interior,
                                              int twist_depth = 2) {
  std::vector<Puncture> punctures;
  for (double bi : b) {
    if (bi == 0.0)
      punctures.push_back(Puncture{PunctureKind::Cusp, 0.0});
    else
      punctures.push_back(Puncture{PunctureKind::Boundary, bi});
  }
  const Surface s = build_surface(punctures, {Range{1, 2}}, {interior});

  const std::vector<int> ks = detail::twist_powers(
      twist_depth, -interior.twist / interior.length);

  std::optional<FourHoledResult> best;
  auto consider = [&](const CurveClass& c) {
    double len;
    try {
      len = curve_length(s, c);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonHyperbolicTrace) return;
      throw;
    }
    if (!best || len < best->length - 1e-15) {
      best = FourHoledResult{c, len, 0.0};
    }
  };

  consider(standard_curve(1, 2, 4));
  for (int k : ks) consider(dehn_twist(standard_curve(2, 3, 4), Range{1, 2}, k));
  {
    CurveClass diag;
    diag.word = Word{1, 2, 3, -2};  // the family separating {1,3} from {2,4}
    for (int k : ks) consider(dehn_twist(diag, Range{1, 2}, k));
  }
  if (!best) fail(ErrorCode::NoCompletion, "no hyperbolic candidate curve");

  double bmax = 0.0;
  for (double bi : b) bmax = std::max(bmax, bi);
  best->bound = 2.0 * bmax + 12.0;
  if (best->length > best->bound + 1e-9)
    fail(ErrorCode::BoundViolated,
         "shortest curve " + std::to_string(best->length) + " exceeds " +
             std::to_string(best->bound));
  return *best;
}

}  // namespace bersdec
