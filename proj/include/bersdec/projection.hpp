#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bersdec/errors.hpp"
#include "bersdec/rng.hpp"

namespace bersdec {

// One arc of a pants curve crossing the disk on one side of gamma. The disk
// boundary is gamma, parametrized by arclength in [0, L); the arc is a chord
// with endpoints s, t. Arcs of the same pants curve share a pants_id.
struct NormalArc {
  int pants_id = 0;
  double length = 0.0;
  double s = 0.0, t = 0.0;
  int hemisphere = 0;  // 0 or 1: which side of gamma
};

// A face on a hemisphere is addressed by the chord it hangs from (-1 for the
// outer face next to gamma's basepoint side).
struct FaceKey {
  int hemisphere = 0;
  int chord_arc = -1;  // index into arcs, or -1 for the outer face
  bool operator==(const FaceKey& o) const = default;
};

struct NormalPositionInstance {
  double gamma_length = 0.0;
  std::vector<NormalArc> arcs;
  std::vector<FaceKey> holed;  // valency-2 faces that contain a hole
};

struct PiecewiseCurve {
  double length = 0.0;
  int hemisphere = 0;
  std::string kind;
};

struct CombinatorialInsertion {
  double gamma_length = 0.0;
  std::vector<PiecewiseCurve> curves;
  int restarts = 0;
  bool contains_gamma = true;
};

namespace detail {

struct Chord {
  int arc = 0;  // index into instance arcs
  double s = 0.0, t = 0.0;
  double len = 0.0;
  int id = 0;
  int parent = -1;  // chord index whose interval immediately contains this one
};

struct WalkFace {
  int own = -1;                 // chord index; -1 = outer face
  std::vector<int> cyc;         // incident chords in face-boundary cyclic order
  std::vector<double> gaps;     // gamma gap following cyc[i] on the boundary
  bool holed = false;
};

struct Hemisphere {
  double L = 0.0;
  std::vector<Chord> chords;
  std::vector<WalkFace> faces;  // faces[0] is the outer face
  int face_of_chord(int c) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].own == c) return static_cast<int>(i);
    return -1;
  }
};

inline double side_length(const Hemisphere& h, int face, int chord) {
  const Chord& c = h.chords[chord];
  const double inner = c.t - c.s;
  return h.faces[face].own == chord ? inner : h.L - inner;
}

inline int other_face(const Hemisphere& h, int face, int chord) {
  const int node = h.face_of_chord(chord);
  if (face == node) {
    const int p = h.chords[chord].parent;
    return p < 0 ? 0 : h.face_of_chord(p);
  }
  return node;
}

inline Hemisphere build_hemisphere(const NormalPositionInstance& inst,
                                   double p_length, int hemi) {
  Hemisphere h;
  h.L = inst.gamma_length;
  for (std::size_t i = 0; i < inst.arcs.size(); ++i) {
    const NormalArc& a = inst.arcs[i];
    if (a.hemisphere != hemi) continue;
    if (!(a.length > 0.0))
      fail(ErrorCode::MalformedInstance, "arc length must be positive");
    if (a.length > p_length * (1.0 + 1e-12))
      fail(ErrorCode::MalformedInstance, "arc longer than the pants bound");
    double s = a.s, t = a.t;
    if (s > t) std::swap(s, t);
    if (!(s >= 0.0) || !(t < h.L) || !(t > s))
      fail(ErrorCode::MalformedInstance, "arc endpoints must be distinct in [0, L)");
    h.chords.push_back(Chord{static_cast<int>(i), s, t, a.length, a.pants_id, -1});
  }
  std::sort(h.chords.begin(), h.chords.end(), [](const Chord& a, const Chord& b) {
    return a.s != b.s ? a.s < b.s : a.t > b.t;
  });

  // endpoints pairwise distinct; chords pairwise non-crossing
  std::vector<double> pts;
  for (const Chord& c : h.chords) {
    pts.push_back(c.s);
    pts.push_back(c.t);
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] == pts[i - 1])
      fail(ErrorCode::MalformedInstance, "coincident arc endpoints");
  for (std::size_t i = 0; i < h.chords.size(); ++i)
    for (std::size_t j = i + 1; j < h.chords.size(); ++j) {
      const Chord& a = h.chords[i];
      const Chord& b = h.chords[j];
      const bool s_in = a.s < b.s && b.s < a.t;
      const bool t_in = a.s < b.t && b.t < a.t;
      if (s_in != t_in)
        fail(ErrorCode::MalformedInstance, "arcs cross inside one hemisphere");
    }

  // nesting forest
  for (std::size_t i = 0; i < h.chords.size(); ++i) {
    int best = -1;
    for (std::size_t j = 0; j < h.chords.size(); ++j) {
      if (i == j) continue;
      if (h.chords[j].s < h.chords[i].s && h.chords[i].t < h.chords[j].t)
        if (best < 0 || h.chords[j].s > h.chords[best].s) best = static_cast<int>(j);
    }
    h.chords[i].parent = best;
  }

  auto children_of = [&](int p) {
    std::vector<int> kids;
    for (std::size_t i = 0; i < h.chords.size(); ++i)
      if (h.chords[i].parent == p) kids.push_back(static_cast<int>(i));
    return kids;  // already ordered by s
  };

  auto is_holed = [&](int own_chord) {
    const int arc = own_chord < 0 ? -1 : h.chords[own_chord].arc;
    for (const FaceKey& k : inst.holed)
      if (k.hemisphere == hemi && k.chord_arc == arc) return true;
    return false;
  };

  // outer face first
  {
    WalkFace f;
    f.own = -1;
    f.cyc = children_of(-1);
    for (std::size_t i = 0; i < f.cyc.size(); ++i) {
      const Chord& cur = h.chords[f.cyc[i]];
      if (i + 1 < f.cyc.size())
        f.gaps.push_back(h.chords[f.cyc[i + 1]].s - cur.t);
      else
        f.gaps.push_back(h.L - cur.t + h.chords[f.cyc[0]].s);
    }
    f.holed = is_holed(-1);
    h.faces.push_back(std::move(f));
  }
  for (std::size_t p = 0; p < h.chords.size(); ++p) {
    WalkFace f;
    f.own = static_cast<int>(p);
    f.cyc.push_back(static_cast<int>(p));
    const std::vector<int> kids = children_of(static_cast<int>(p));
    f.cyc.insert(f.cyc.end(), kids.begin(), kids.end());
    double prev_end = h.chords[p].s;
    for (int k : kids) {
      f.gaps.push_back(h.chords[k].s - prev_end);
      prev_end = h.chords[k].t;
    }
    f.gaps.push_back(h.chords[p].t - prev_end);
    f.holed = is_holed(static_cast<int>(p));
    h.faces.push_back(std::move(f));
  }

  for (const WalkFace& f : h.faces) {
    if (f.own < 0 && f.cyc.empty()) continue;  // empty hemisphere
    const int v = static_cast<int>(f.cyc.size());
    if (v < 1 || v > 4)
      fail(ErrorCode::MalformedInstance,
           "face valency " + std::to_string(v) + " outside 1..4");
    if (f.holed && v != 2)
      fail(ErrorCode::MalformedInstance, "only valency-2 faces may carry a hole flag");
    for (double g : f.gaps)
      if (g < 0.0) fail(ErrorCode::MalformedInstance, "negative boundary gap");
    if (v == 4) {
      const auto id = [&](int i) { return h.chords[f.cyc[i]].id; };
      const int opposite = (id(0) == id(2) ? 1 : 0) + (id(1) == id(3) ? 1 : 0);
      const bool adjacent = id(0) == id(1) || id(1) == id(2) || id(2) == id(3) ||
                            id(3) == id(0);
      if (adjacent || opposite != 1)
        fail(ErrorCode::MalformedInstance,
             "octagon must pair exactly one opposite side on the same pants curve");
    }
  }
  return h;
}

}  // namespace detail

// Walks the dual tree of one hemisphere from a root edge all of whose
// outward directions span at most half of gamma, emitting the short closed
// curves that replace the pants curves crossing gamma. Each emitted length
// is at most p_length + gamma_length.
inline CombinatorialInsertion project_insert_combinatorial(
    const NormalPositionInstance& inst, double p_length) {
  if (inst.arcs.empty())
    fail(ErrorCode::MalformedInstance, "gamma crosses no pants curve");
  if (!(inst.gamma_length > 0.0))
    fail(ErrorCode::MalformedInstance, "gamma length must be positive");

  CombinatorialInsertion out;
  out.gamma_length = inst.gamma_length;
  const double L = inst.gamma_length;
  const double half = L / 2.0 + 1e-12 * L;

  for (int hemi = 0; hemi < 2; ++hemi) {
    detail::Hemisphere h = detail::build_hemisphere(inst, p_length, hemi);
    if (h.chords.empty()) continue;

    // gamma-span of chord c directed away from the root chord.
    auto away_span = [&](int c, int root) {
      const double inner = h.chords[c].t - h.chords[c].s;
      // ancestors of the root see the walk leave through their outside
      for (int p = h.chords[root].parent; p >= 0; p = h.chords[p].parent)
        if (p == c) return L - inner;
      return inner;
    };
    auto valid_root = [&](int root) {
      for (std::size_t c = 0; c < h.chords.size(); ++c)
        if (static_cast<int>(c) != root && away_span(static_cast<int>(c), root) > half)
          return false;
      return true;
    };

    int root = -1;
    for (std::size_t c = 0; c < h.chords.size(); ++c)
      if (valid_root(static_cast<int>(c))) {
        root = static_cast<int>(c);
        break;
      }
    if (root < 0)
      fail(ErrorCode::NoValidRootEdge, "no chord has all outward spans <= L/2");

    int budget = 0;
    for (const detail::WalkFace& f : h.faces)
      if (f.cyc.size() == 4) ++budget;

    std::vector<PiecewiseCurve> emitted;
    bool done = false;
    while (!done) {
      emitted.clear();
      done = true;
      const detail::Chord& rc = h.chords[root];
      emitted.push_back({rc.t - rc.s + rc.len, hemi, "initial_inner"});
      emitted.push_back({L - (rc.t - rc.s) + rc.len, hemi, "initial_outer"});

      std::vector<std::pair<int, int>> queue;  // (face, entry chord)
      queue.push_back({h.face_of_chord(root), root});
      queue.push_back({detail::other_face(h, h.face_of_chord(root), root), root});

      while (!queue.empty()) {
        auto [face, entry] = queue.back();
        queue.pop_back();
        const detail::WalkFace& f = h.faces[face];
        const int v = static_cast<int>(f.cyc.size());
        int idx = 0;
        while (f.cyc[idx] != entry) ++idx;
        auto at = [&](int k) { return f.cyc[(idx + k) % v]; };
        auto gap = [&](int k) { return f.gaps[(idx + k) % v]; };
        auto onward = [&](int chord) {
          return detail::side_length(h, detail::other_face(h, face, chord), chord);
        };
        auto go = [&](int chord) {
          queue.push_back({detail::other_face(h, face, chord), chord});
        };

        if (v == 1) continue;  // one-holed bigon: the walk stops here
        if (v == 2) {
          const int c2 = at(1);
          if (f.holed)
            emitted.push_back({h.chords[c2].len + onward(c2), hemi, "holed_quad"});
          go(c2);
          continue;
        }
        if (v == 3) {
          for (int k = 1; k <= 2; ++k) {
            const int ck = at(k);
            emitted.push_back({h.chords[ck].len + onward(ck), hemi, "hexagon"});
            go(ck);
          }
          continue;
        }
        // octagon
        const int c1 = at(1), cm = at(2), c2 = at(3);
        const double into = detail::side_length(h, face, entry);
        if (h.chords[entry].id == h.chords[cm].id) {
          emitted.push_back({h.chords[cm].len + onward(cm), hemi, "octagon_mid"});
          emitted.push_back({h.chords[c1].len + onward(c1), hemi, "octagon_side"});
          emitted.push_back({h.chords[c2].len + onward(c2), hemi, "octagon_side"});
          emitted.push_back({h.chords[entry].len + h.chords[cm].len + into - onward(cm),
                             hemi, "octagon_pair_through"});
          go(c1);
          go(cm);
          go(c2);
        } else {
          emitted.push_back({h.chords[c1].len + onward(c1), hemi, "octagon_side"});
          emitted.push_back({h.chords[cm].len + onward(cm), hemi, "octagon_mid"});
          emitted.push_back({h.chords[c2].len + onward(c2), hemi, "octagon_side"});
          const double alpha = into - gap(0) - gap(3);
          if (alpha <= half) {
            const double alpha_in = gap(1) + onward(cm) + gap(2);
            emitted.push_back({alpha + alpha_in + h.chords[c1].len + h.chords[c2].len,
                               hemi, "octagon_pair_around"});
            go(c1);
            go(cm);
            go(c2);
          } else {
            if (entry != root)
              fail(ErrorCode::MalformedInstance,
                   "walk invariant violated: long side pair away from the root");
            if (--budget < 0)
              fail(ErrorCode::RestartBudgetExceeded,
                   "more restarts than octagon faces");
            if (!valid_root(c1))
              fail(ErrorCode::NoValidRootEdge, "restart chord is not a valid root");
            root = c1;
            out.restarts += 1;
            done = false;
            break;
          }
        }
      }
    }
    for (const PiecewiseCurve& pc : emitted)
      if (pc.length > p_length + L + 1e-9)
        fail(ErrorCode::InsertionBoundViolated,
             "emitted curve of length " + std::to_string(pc.length) +
                 " exceeds p_length + gamma_length");
    out.curves.insert(out.curves.end(), emitted.begin(), emitted.end());
  }
  if (out.curves.empty())
    fail(ErrorCode::MalformedInstance, "gamma crosses no pants curve");
  return out;
}

// Deterministic synthetic instance on a dyadic grid: all lengths are exact
// binary fractions so every comparison in the walk is exact.
inline NormalPositionInstance random_normal_instance(SplitMix64& rng,
                                                     double* p_length_out) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    NormalPositionInstance inst;
    const double unit = 1.0 / 256.0;
    const std::uint64_t l_units = 512 + rng.below(3584);
    inst.gamma_length = static_cast<double>(l_units) * unit;
    const double p_length = static_cast<double>(256 + rng.below(1792)) * unit;

    int next_id = 0;
    for (int hemi = 0; hemi < 2; ++hemi) {
      const int m = static_cast<int>(rng.below(5));
      if (m == 0) continue;
      std::vector<std::uint64_t> pts;
      while (static_cast<int>(pts.size()) < 2 * m) {
        const std::uint64_t p = rng.below(l_units);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      std::sort(pts.begin(), pts.end());
      // random non-crossing perfect matching of the sorted endpoints
      std::vector<std::pair<int, int>> pairs;
      auto match = [&](auto&& self, int lo, int hi) -> void {
        if (lo > hi) return;
        const int span = hi - lo + 1;
        const int k = 1 + 2 * static_cast<int>(rng.below(span / 2));
        pairs.push_back({lo, lo + k});
        self(self, lo + 1, lo + k - 1);
        self(self, lo + k + 1, hi);
      };
      match(match, 0, 2 * m - 1);
      for (auto [a, b] : pairs) {
        NormalArc arc;
        arc.hemisphere = hemi;
        arc.s = static_cast<double>(pts[a]) * unit;
        arc.t = static_cast<double>(pts[b]) * unit;
        arc.pants_id = next_id++;
        arc.length = 0.0;  // assigned after id grouping
        inst.arcs.push_back(arc);
      }
    }
    if (inst.arcs.empty()) continue;

    try {
      // derive face structure to place octagon pairings and hole flags
      for (int hemi = 0; hemi < 2; ++hemi) {
        detail::Hemisphere h;
        h.L = inst.gamma_length;
        bool any = false;
        for (const NormalArc& a : inst.arcs)
          if (a.hemisphere == hemi) any = true;
        if (!any) continue;
        {
          NormalPositionInstance probe = inst;
          for (NormalArc& a : probe.arcs) a.length = p_length / 64.0;
          h = detail::build_hemisphere(probe, p_length, hemi);
        }
        for (const detail::WalkFace& f : h.faces) {
          if (f.cyc.size() == 4) {
            const bool first = rng.below(2) == 0;
            const int u = f.cyc[first ? 0 : 1];
            const int v = f.cyc[first ? 2 : 3];
            const int keep = std::min(h.chords[u].id, h.chords[v].id);
            const int drop = std::max(h.chords[u].id, h.chords[v].id);
            for (NormalArc& a : inst.arcs)
              if (a.pants_id == drop) a.pants_id = keep;
          } else if (f.cyc.size() == 2 && rng.below(2) == 0) {
            inst.holed.push_back(
                FaceKey{hemi, f.own < 0 ? -1 : h.chords[f.own].arc});
          }
        }
      }
      // dyadic arc lengths: each id group splits p_length evenly in powers of 2
      for (std::size_t i = 0; i < inst.arcs.size(); ++i) {
        int group = 0;
        for (const NormalArc& a : inst.arcs)
          if (a.pants_id == inst.arcs[i].pants_id) ++group;
        double share = p_length;
        int cap = 1;
        while (cap < group) cap *= 2;
        share /= static_cast<double>(cap * 2);
        inst.arcs[i].length = share;
      }
      CombinatorialInsertion probe = project_insert_combinatorial(inst, p_length);
      (void)probe;
      if (p_length_out) *p_length_out = p_length;
      return inst;
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorCode::MalformedInstance, "could not synthesize a valid instance");
}

}  // namespace bersdec
