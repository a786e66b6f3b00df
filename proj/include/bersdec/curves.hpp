#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bersdec/errors.hpp"
#include "bersdec/rng.hpp"

namespace bersdec {

// Free group word in the puncture generators; letter +i is the i-th
// generator, -i its inverse. Letters range over 1..n (letter n only appears
// internally, as the product-inverse of the others).
using Word = std::vector<int>;

// 1-based closed index range [lo, hi] of consecutive punctures.
struct Range {
  int lo = 0, hi = 0;
  int size() const { return hi - lo + 1; }
  bool operator==(const Range& o) const = default;
  bool contains(const Range& o) const { return lo <= o.lo && o.hi <= hi; }
  bool disjoint(const Range& o) const { return hi < o.lo || o.hi < lo; }
  bool compatible(const Range& o) const {
    return contains(o) || o.contains(*this) || disjoint(o);
  }
  bool crosses(const Range& o) const { return !compatible(o); }
  bool operator<(const Range& o) const {
    return lo != o.lo ? lo < o.lo : hi < o.hi;
  }
};

inline Word word_inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

// Free reduction: cancel adjacent inverse letters.
inline Word word_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (int letter : w) {
    if (letter == 0) continue;
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

inline Word word_cyclic_reduce(Word w) {
  w = word_reduce(std::move(w));
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + lo, w.begin() + hi);
}

// Canonical key of the unoriented conjugacy class: lexicographically least
// cyclic rotation over the cyclically reduced word and its inverse.
inline Word word_class_key(const Word& w) {
  Word cw = word_cyclic_reduce(w);
  if (cw.empty()) return cw;
  Word best;
  for (const Word& base : {cw, word_inverse(cw)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      Word rot(base.begin() + r, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + r);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

struct TwistEntry {
  Range along;
  int power = 0;
  bool operator==(const TwistEntry& o) const = default;
};

using Decoration = std::vector<TwistEntry>;

// Simple closed curve class on the n-marked sphere. The word is an explicit
// representative; support records which consecutive punctures the curve
// encloses; twists records the homeomorphism history that produced it.
struct CurveClass {
  Word word;
  std::optional<Range> support;
  Decoration twists;
};

inline Word standard_word(const Range& r) {
  Word w;
  for (int m = r.lo; m <= r.hi; ++m) w.push_back(m);
  return w;
}

inline CurveClass standard_curve(int i, int j, int n) {
  if (j - i + 1 < 2)
    fail(ErrorCode::RangeTooSmall, "support [" + std::to_string(i) + "," +
                                       std::to_string(j) + "] has fewer than 2 punctures");
  if (i < 1 || j > n - 1 || j - i + 1 > n - 2)
    fail(ErrorCode::RangeTooLarge, "support [" + std::to_string(i) + "," +
                                       std::to_string(j) + "] is not a proper range of 1.." +
                                       std::to_string(n - 1));
  CurveClass c;
  c.support = Range{i, j};
  c.word = standard_word(Range{i, j});
  return c;
}

// Dehn twist of power k along the standard curve of `along`, as the word
// substitution x_m -> w^k x_m w^{-k} for m in the twisting range.
inline Word twist_word(const Word& target, const Range& along, int k) {
  if (k == 0) return word_reduce(target);
  const Word w = standard_word(along);
  const Word wi = word_inverse(w);
  Word out;
  for (int letter : target) {
    const int m = std::abs(letter);
    if (m >= along.lo && m <= along.hi) {
      const Word& pre = k > 0 ? w : wi;
      const Word& post = k > 0 ? wi : w;
      for (int rep = 0; rep < std::abs(k); ++rep)
        out.insert(out.end(), pre.begin(), pre.end());
      out.push_back(letter);
      for (int rep = 0; rep < std::abs(k); ++rep)
        out.insert(out.end(), post.begin(), post.end());
    } else {
      out.push_back(letter);
    }
  }
  return word_reduce(out);
}

inline CurveClass dehn_twist(const CurveClass& c, const Range& along, int k) {
  CurveClass out;
  out.word = twist_word(c.word, along, k);
  out.support = c.support;  // a puncture-fixing homeomorphism preserves sides
  out.twists = c.twists;
  if (k != 0) {
    if (!out.twists.empty() && out.twists.back().along == along)
      out.twists.back().power += k;
    else
      out.twists.push_back(TwistEntry{along, k});
    if (!out.twists.empty() && out.twists.back().power == 0) out.twists.pop_back();
  }
  return out;
}

inline Decoration decoration_concat(Decoration d, const TwistEntry& e) {
  if (e.power != 0) d.push_back(e);
  return d;
}

inline CurveClass apply_decoration(CurveClass c, const Decoration& d) {
  for (const TwistEntry& e : d) c = dehn_twist(c, e.along, e.power);
  return c;
}

inline bool is_laminar(const std::vector<Range>& rs) {
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j)
      if (!rs[i].compatible(rs[j]) || rs[i] == rs[j]) return false;
  return true;
}

inline void validate_reference(int n, const std::vector<Range>& rs) {
  if (static_cast<int>(rs.size()) != n - 3)
    fail(ErrorCode::InvalidLaminarFamily,
         "expected " + std::to_string(n - 3) + " ranges, got " +
             std::to_string(rs.size()));
  for (const Range& r : rs) {
    if (r.lo < 1 || r.hi > n - 1 || r.size() < 2 || r.size() > n - 2)
      fail(ErrorCode::InvalidLaminarFamily,
           "range [" + std::to_string(r.lo) + "," + std::to_string(r.hi) +
               "] out of bounds for n=" + std::to_string(n));
  }
  if (!is_laminar(rs))
    fail(ErrorCode::InvalidLaminarFamily, "ranges are not pairwise nested/disjoint");
}

namespace detail {

// All full binary subdivisions of [lo..hi]; each result lists every interval
// strictly inside, plus [lo..hi] itself when included_self.
inline void subdivisions(int lo, int hi, std::vector<std::vector<Range>>* out) {
  out->clear();
  if (lo == hi) {
    out->push_back({});
    return;
  }
  for (int m = lo; m < hi; ++m) {
    std::vector<std::vector<Range>> left, right;
    subdivisions(lo, m, &left);
    subdivisions(m + 1, hi, &right);
    for (const auto& l : left)
      for (const auto& r : right) {
        std::vector<Range> fam = l;
        fam.insert(fam.end(), r.begin(), r.end());
        if (m > lo) fam.push_back(Range{lo, m});
        if (hi > m + 1) fam.push_back(Range{m + 1, hi});
        out->push_back(std::move(fam));
      }
  }
}

}  // namespace detail

// All maximal laminar families of ranges in [1..n-1] (the reference
// skeletons), kept at n <= 9 because the count is the Catalan number
// C_{n-2}. `rotation` relabels punctures cyclically before normalizing each
// curve back to its unique range representative avoiding puncture n; the
// family SET is rotation-invariant, which tests assert.
inline std::vector<std::vector<Range>> laminar_families(int n, int rotation = 0) {
  if (n < 4 || n > 9)
    fail(ErrorCode::NTooLarge, "laminar family enumeration limited to 4 <= n <= 9");
  std::vector<std::vector<Range>> raw;
  detail::subdivisions(1, n - 1, &raw);
  std::vector<std::vector<Range>> out;
  for (auto& fam : raw) {
    std::vector<Range> f;
    for (const Range& r : fam) {
      int lo = r.lo, hi = r.hi;
      if (rotation != 0) {
        // Rotate the cyclic arc {lo..hi}; normalize to the side avoiding n.
        int a = (lo - 1 + rotation) % n + ((lo - 1 + rotation) % n < 0 ? n : 0);
        int b = (hi - 1 + rotation) % n + ((hi - 1 + rotation) % n < 0 ? n : 0);
        // arc from a to b (0-based, cyclic); if it contains n-1 take complement
        int len = (b - a + n) % n + 1;
        bool wraps = a + len - 1 >= n || (a <= n - 1 && n - 1 <= a + len - 1);
        if (wraps) {
          a = (b + 1) % n;
          len = n - len;
        }
        lo = a + 1;
        hi = a + len;
      }
      f.push_back(Range{lo, hi});
    }
    std::sort(f.begin(), f.end());
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](const Range& x, const Range& y) {
          return x < y;
        });
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Deterministic random maximal laminar family (random binary subdivision).
inline std::vector<Range> random_laminar_family(int n, SplitMix64& rng) {
  std::vector<Range> out;
  auto rec = [&](auto&& self, int lo, int hi) -> void {
    if (lo >= hi) return;
    int m = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo)));
    if (m > lo) out.push_back(Range{lo, m});
    if (hi > m + 1) out.push_back(Range{m + 1, hi});
    self(self, lo, m);
    self(self, m + 1, hi);
  };
  rec(rec, 1, n - 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bersdec
