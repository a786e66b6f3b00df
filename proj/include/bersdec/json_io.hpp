#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bersdec/constructions.hpp"
#include "bersdec/decomp.hpp"
#include "bersdec/errors.hpp"
#include "bersdec/projection.hpp"
#include "bersdec/surface.hpp"

namespace bersdec {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where,
                                    const std::string& what) {
  fail(ErrorCode::ParseError, where + ": " + what);
}

inline const json& field(const json& j, const char* name,
                         const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end())
    parse_fail(where, std::string("missing field \"") + name + "\"");
  return *it;
}

inline double finite_number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(where, "non-finite value");
  return v;
}

inline int integer_value(const json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where, "expected an integer");
  return j.get<int>();
}

inline Range range_value(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) parse_fail(where, "expected [lo, hi]");
  return Range{integer_value(j[0], where + "[0]"),
               integer_value(j[1], where + "[1]")};
}

}  // namespace detail

inline json surface_to_json(const Surface& s) {
  json doc;
  json punctures = json::array();
  for (const Puncture& p : s.punctures) {
    json e;
    e["kind"] = puncture_kind_name(p.kind);
    if (p.kind == PunctureKind::Boundary) e["length"] = p.length;
    punctures.push_back(std::move(e));
  }
  doc["punctures"] = std::move(punctures);
  json refs = json::array();
  for (const Range& r : s.reference) refs.push_back(json::array({r.lo, r.hi}));
  doc["reference"] = std::move(refs);
  json fn = json::array();
  for (std::size_t i = 0; i < s.fn.size(); ++i) {
    json e;
    e["curve"] = static_cast<int>(i) + 1;
    e["length"] = s.fn[i].length;
    e["twist"] = s.fn[i].twist;
    fn.push_back(std::move(e));
  }
  doc["fn"] = std::move(fn);
  return doc;
}

// Holonomy matrices are never stored; build_surface recomputes them from the
// parsed punctures, reference family and Fenchel-Nielsen coordinates.
inline Surface surface_from_json(const json& doc) {
  const json& jp = detail::field(doc, "punctures", "surface");
  if (!jp.is_array()) detail::parse_fail("punctures", "expected an array");
  std::vector<Puncture> punctures;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const std::string where = "punctures[" + std::to_string(i) + "]";
    const json& jk = detail::field(jp[i], "kind", where);
    if (!jk.is_string()) detail::parse_fail(where + ".kind", "expected a string");
    const std::string kind = jk.get<std::string>();
    Puncture p;
    if (kind == "cusp") {
      p.kind = PunctureKind::Cusp;
    } else if (kind == "cone_pi") {
      p.kind = PunctureKind::ConePi;
    } else if (kind == "boundary") {
      p.kind = PunctureKind::Boundary;
      p.length = detail::finite_number(detail::field(jp[i], "length", where),
                                       where + ".length");
    } else {
      detail::parse_fail(where + ".kind", "unknown kind \"" + kind + "\"");
    }
    punctures.push_back(p);
  }

  const json& jr = detail::field(doc, "reference", "surface");
  if (!jr.is_array()) detail::parse_fail("reference", "expected an array");
  std::vector<Range> reference;
  for (std::size_t i = 0; i < jr.size(); ++i)
    reference.push_back(
        detail::range_value(jr[i], "reference[" + std::to_string(i) + "]"));

  const json& jf = detail::field(doc, "fn", "surface");
  if (!jf.is_array()) detail::parse_fail("fn", "expected an array");
  std::vector<FNCoordinate> fn(reference.size());
  std::vector<bool> seen(reference.size(), false);
  for (std::size_t i = 0; i < jf.size(); ++i) {
    const std::string where = "fn[" + std::to_string(i) + "]";
    const int k = detail::integer_value(detail::field(jf[i], "curve", where),
                                        where + ".curve");
    if (k < 1 || k > static_cast<int>(reference.size()))
      detail::parse_fail(where + ".curve",
                         "curve " + std::to_string(k) + " outside 1.." +
                             std::to_string(reference.size()));
    if (seen[k - 1])
      detail::parse_fail(where + ".curve",
                         "duplicate entry for curve " + std::to_string(k));
    seen[k - 1] = true;
    fn[k - 1].length = detail::finite_number(
        detail::field(jf[i], "length", where), where + ".length");
    fn[k - 1].twist = detail::finite_number(
        detail::field(jf[i], "twist", where), where + ".twist");
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k])
      detail::parse_fail("fn",
                         "missing entry for curve " + std::to_string(k + 1));

  return build_surface(std::move(punctures), std::move(reference),
                       std::move(fn));
}

inline json curve_to_json(const Surface& s, const CurveClass& c) {
  json doc;
  doc["word"] = c.word;
  if (c.support)
    doc["support"] = json::array({c.support->lo, c.support->hi});
  if (!c.twists.empty()) {
    json tw = json::array();
    for (const TwistEntry& t : c.twists) {
      const int k = s.reference_index(t.along);
      if (k == 0)
        fail(ErrorCode::InvalidLaminarFamily,
             "twist range [" + std::to_string(t.along.lo) + "," +
                 std::to_string(t.along.hi) + "] is not a reference curve");
      tw.push_back(json::array({k, t.power}));
    }
    doc["twists"] = std::move(tw);
  }
  return doc;
}

inline CurveClass curve_from_json(const Surface& s, const json& doc) {
  CurveClass c;
  const json& jw = detail::field(doc, "word", "curve");
  if (!jw.is_array() || jw.empty())
    detail::parse_fail("curve.word", "expected a non-empty array");
  for (std::size_t i = 0; i < jw.size(); ++i) {
    const std::string where = "curve.word[" + std::to_string(i) + "]";
    const int g = detail::integer_value(jw[i], where);
    if (g == 0 || g > s.n || g < -s.n)
      detail::parse_fail(where, "generator " + std::to_string(g) +
                                    " outside +-1.." + std::to_string(s.n));
    c.word.push_back(g);
  }
  if (auto it = doc.find("support"); it != doc.end())
    c.support = detail::range_value(*it, "curve.support");
  if (auto it = doc.find("twists"); it != doc.end()) {
    if (!it->is_array()) detail::parse_fail("curve.twists", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "curve.twists[" + std::to_string(i) + "]";
      const json& e = (*it)[i];
      if (!e.is_array() || e.size() != 2)
        detail::parse_fail(where, "expected [curve, power]");
      const int k = detail::integer_value(e[0], where + "[0]");
      if (k < 1 || k > static_cast<int>(s.reference.size()))
        detail::parse_fail(where + "[0]",
                           "curve " + std::to_string(k) + " outside 1.." +
                               std::to_string(s.reference.size()));
      c.twists.push_back(
          TwistEntry{s.reference[k - 1], detail::integer_value(e[1], where + "[1]")});
    }
  }
  return c;
}

inline json result_to_json(const Surface& s, const BersResult& r) {
  json doc;
  json curves = json::array();
  for (const CurveClass& c : r.decomposition.curves)
    curves.push_back(curve_to_json(s, c));
  doc["curves"] = std::move(curves);
  doc["lengths"] = r.decomposition.lengths;
  doc["max_length"] = r.decomposition.max_length;
  doc["bound"] = r.bound;
  doc["within_bound"] = r.within_bound;
  json trace = json::array();
  for (const BersTraceRow& row : r.trace) {
    json e;
    e["n"] = row.n;
    e["splitter_len"] = row.splitter_len;
    e["certified"] = row.certified;
    e["insertion_ok"] = row.insertion_ok;
    trace.push_back(std::move(e));
  }
  doc["trace"] = std::move(trace);
  return doc;
}

inline json lift_to_json(const LiftReport& lr) {
  json doc;
  doc["g"] = lr.g;
  json lifts = json::array();
  for (const LiftedCurve& lc : lr.lifts) {
    json e;
    e["support"] = json::array({lc.support.lo, lc.support.hi});
    e["tag"] = lift_tag_name(lc.tag);
    e["base_length"] = lc.base_length;
    e["lift_lengths"] = lc.lift_lengths;
    e["deduplicated"] = lc.deduplicated;
    lifts.push_back(std::move(e));
  }
  doc["lifts"] = std::move(lifts);
  json pieces = json::array();
  for (const LiftPiece& pc : lr.pieces) {
    json e;
    e["boundary_curves"] = pc.boundary_curves;
    e["holes"] = pc.holes;
    e["cone_points"] = pc.cone_points;
    e["involution_invariant"] = pc.involution_invariant;
    if (pc.holes == 4) e["completion_bound"] = pc.completion_bound;
    pieces.push_back(std::move(e));
  }
  doc["pieces"] = std::move(pieces);
  doc["base_max"] = lr.base_max;
  doc["mu_max"] = lr.mu_max;
  doc["completion_count"] = lr.completion_count;
  doc["curve_count"] = lr.curve_count;
  doc["total_bound"] = lr.total_bound;
  return doc;
}

inline json hairy_to_json(const HairyParams& h) {
  json doc;
  doc["p"] = h.p;
  doc["ell"] = h.ell;
  doc["x0"] = h.x0;
  doc["boundary_count"] = h.boundary_count;
  doc["rectangle_long"] = h.rectangle_long;
  doc["rectangle_short"] = h.rectangle_short;
  doc["case_equal_curve"] = h.case_equal_curve;
  doc["case_crossing"] = h.case_crossing;
  doc["case_separating"] = h.case_separating;
  doc["lower_bound"] = h.lower_bound;
  return doc;
}

inline json normal_instance_to_json(const NormalPositionInstance& inst,
                                    double p_length) {
  json doc;
  doc["gamma_length"] = inst.gamma_length;
  doc["p_length"] = p_length;
  json arcs = json::array();
  for (const NormalArc& a : inst.arcs) {
    json e;
    e["pants_id"] = a.pants_id;
    e["length"] = a.length;
    e["s"] = a.s;
    e["t"] = a.t;
    e["hemisphere"] = a.hemisphere;
    arcs.push_back(std::move(e));
  }
  doc["arcs"] = std::move(arcs);
  if (!inst.holed.empty()) {
    json holed = json::array();
    for (const FaceKey& f : inst.holed)
      holed.push_back(json{{"hemisphere", f.hemisphere},
                           {"chord_arc", f.chord_arc}});
    doc["holed"] = std::move(holed);
  }
  return doc;
}

inline NormalPositionInstance normal_instance_from_json(const json& doc,
                                                        double* p_length) {
  NormalPositionInstance inst;
  inst.gamma_length = detail::finite_number(
      detail::field(doc, "gamma_length", "instance"), "gamma_length");
  *p_length = detail::finite_number(detail::field(doc, "p_length", "instance"),
                                    "p_length");
  const json& ja = detail::field(doc, "arcs", "instance");
  if (!ja.is_array()) detail::parse_fail("arcs", "expected an array");
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string where = "arcs[" + std::to_string(i) + "]";
    const json& e = ja[i];
    NormalArc a;
    a.pants_id = detail::integer_value(detail::field(e, "pants_id", where),
                                       where + ".pants_id");
    a.length = detail::finite_number(detail::field(e, "length", where),
                                     where + ".length");
    a.s = detail::finite_number(detail::field(e, "s", where), where + ".s");
    a.t = detail::finite_number(detail::field(e, "t", where), where + ".t");
    a.hemisphere = detail::integer_value(
        detail::field(e, "hemisphere", where), where + ".hemisphere");
    if (a.hemisphere != 0 && a.hemisphere != 1)
      detail::parse_fail(where + ".hemisphere", "expected 0 or 1");
    inst.arcs.push_back(a);
  }
  if (auto it = doc.find("holed"); it != doc.end()) {
    if (!it->is_array()) detail::parse_fail("holed", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "holed[" + std::to_string(i) + "]";
      const json& e = (*it)[i];
      FaceKey f;
      f.hemisphere = detail::integer_value(
          detail::field(e, "hemisphere", where), where + ".hemisphere");
      f.chord_arc = detail::integer_value(
          detail::field(e, "chord_arc", where), where + ".chord_arc");
      inst.holed.push_back(f);
    }
  }
  return inst;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {  // parse errors and number overflow
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot open " + path + " for writing");
  out << body;
}

inline std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace bersdec
