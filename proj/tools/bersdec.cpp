#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bersdec/bounds.hpp"
#include "bersdec/constructions.hpp"
#include "bersdec/decomp.hpp"
#include "bersdec/errors.hpp"
#include "bersdec/experiment.hpp"
#include "bersdec/json_io.hpp"
#include "bersdec/projection.hpp"

namespace {

using namespace bersdec;

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty())
    std::cout << body;
  else
    write_text_file(out_path, body);
}

PunctureKind parse_kind(const std::string& k) {
  if (k == "cusp") return PunctureKind::Cusp;
  if (k == "cone_pi") return PunctureKind::ConePi;
  if (k == "boundary") return PunctureKind::Boundary;
  fail(ErrorCode::DomainError,
       "unknown puncture kind \"" + k + "\" (expected cusp|cone_pi|boundary)");
}

// --n accepts either a single count or an inclusive range "low:high".
void parse_n_range(const std::string& text, int* lo, int* hi) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      *lo = *hi = std::stoi(text);
    } else {
      *lo = std::stoi(text.substr(0, colon));
      *hi = std::stoi(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    fail(ErrorCode::DomainError, "cannot parse puncture count \"" + text + "\"");
  }
}

struct Options {
  std::uint64_t seed = 1;
  std::string n_text;  // per-subcommand default applied at run time
  std::string kind = "cusp";
  double len_low = 0.5, len_high = 2.5;
  int twist_depth = 2;
  int base_n = 5;
  int trials = 20;
  int p = 1;
  double ell = 0.0;
  int g = 2;
  bool timings = false;
  std::string in_path, out_path;
  std::string format;  // empty = subcommand default
};

std::string pick_format(const Options& o, const char* fallback) {
  if (o.format.empty()) return fallback;
  if (o.format != "json" && o.format != "csv")
    fail(ErrorCode::DomainError,
         "unknown format \"" + o.format + "\" (expected json|csv)");
  return o.format;
}

int cmd_gen(const Options& o) {
  int n_lo = 0, n_hi = 0;
  parse_n_range(o.n_text.empty() ? "6" : o.n_text, &n_lo, &n_hi);
  if (n_lo != n_hi)
    fail(ErrorCode::DomainError, "gen takes a single puncture count");
  const Surface s =
      gen_surface(o.seed, n_lo, parse_kind(o.kind), o.len_low, o.len_high);
  if (pick_format(o, "json") != "json")
    fail(ErrorCode::DomainError, "gen emits json only");
  emit(o.out_path, dump_json(surface_to_json(s)));
  return 0;
}

int cmd_decompose(const Options& o) {
  const Surface s = surface_from_json(read_json_file(o.in_path));
  const BersResult r = bers_decompose(s, o.base_n, o.twist_depth);
  emit(o.out_path, dump_json(result_to_json(s, r)));
  return r.within_bound ? 0 : 2;
}

// Input dispatch: a document with an "arcs" array is a combinatorial
// normal-position instance for the tree walk; a document with a "surface"
// field is a geometric instance (surface + curve, optional decomposition).
int cmd_project(const Options& o) {
  const json doc = read_json_file(o.in_path);

  if (doc.contains("arcs")) {
    double p_length = 0.0;
    const NormalPositionInstance inst =
        normal_instance_from_json(doc, &p_length);
    const CombinatorialInsertion ins =
        project_insert_combinatorial(inst, p_length);
    json out;
    out["gamma_length"] = ins.gamma_length;
    out["p_length"] = p_length;
    json curves = json::array();
    double max_piece = 0.0;
    for (const PiecewiseCurve& c : ins.curves) {
      json e;
      e["length"] = c.length;
      e["hemisphere"] = c.hemisphere;
      e["kind"] = c.kind;
      curves.push_back(std::move(e));
      if (c.length > max_piece) max_piece = c.length;
    }
    out["curves"] = std::move(curves);
    out["restarts"] = ins.restarts;
    out["contains_gamma"] = ins.contains_gamma;
    out["max_piece"] = max_piece;
    const bool ok = max_piece <= p_length + ins.gamma_length + 1e-9;
    out["within_additive"] = ok;
    emit(o.out_path, dump_json(out));
    return ok ? 0 : 2;
  }

  if (doc.contains("surface")) {
    const Surface s = surface_from_json(doc.at("surface"));
    const CurveClass gamma =
        curve_from_json(s, detail::field(doc, "curve", "instance"));
    PantsDecomposition p;
    if (doc.contains("decomposition")) {
      const json& jd = doc.at("decomposition");
      if (!jd.is_array() || jd.empty())
        detail::parse_fail("decomposition", "expected a non-empty array");
      for (std::size_t i = 0; i < jd.size(); ++i) {
        CurveClass c = curve_from_json(s, jd[i]);
        p.lengths.push_back(curve_length(s, c));
        p.curves.push_back(std::move(c));
      }
      p.max_length = *std::max_element(p.lengths.begin(), p.lengths.end());
    } else {
      p = detail::measure_family(s, s.reference, {});
    }
    const double gamma_len = curve_length(s, gamma);
    const double allowed = p.max_length + gamma_len + 1e-9;
    const PantsDecomposition out =
        project_insert_search(s, p, gamma, o.twist_depth);
    BersResult wrapped;
    wrapped.decomposition = out;
    wrapped.bound = allowed;
    wrapped.within_bound = out.max_length <= allowed;
    emit(o.out_path, dump_json(result_to_json(s, wrapped)));
    return wrapped.within_bound ? 0 : 2;
  }

  detail::parse_fail("instance",
                     "expected an \"arcs\" instance or a \"surface\" document");
}

int cmd_sweep(const Options& o) {
  ExperimentConfig cfg;
  cfg.seed = o.seed;
  parse_n_range(o.n_text.empty() ? "5:12" : o.n_text, &cfg.n_low, &cfg.n_high);
  cfg.kind = parse_kind(o.kind);
  cfg.len_low = o.len_low;
  cfg.len_high = o.len_high;
  cfg.twist_depth = o.twist_depth;
  cfg.base_n = o.base_n;
  cfg.trials = o.trials;
  cfg.timings = o.timings;
  const SweepReport rep = run_sweep(cfg);
  if (pick_format(o, "csv") == "csv") {
    emit(o.out_path, sweep_csv(rep));
  } else {
    json rows = json::array();
    for (const SweepRow& r : rep.rows) {
      json e;
      e["seed"] = r.seed;
      e["n"] = r.n;
      e["kind"] = puncture_kind_name(r.kind);
      e["max_len"] = r.max_len;
      e["bound"] = r.bound;
      e["ratio"] = r.ratio;
      e["certified_split_all"] = r.certified_split_all;
      e["time_ms"] = r.time_ms;
      if (!r.error.empty()) e["error"] = r.error;
      rows.push_back(std::move(e));
    }
    json out;
    out["rows"] = std::move(rows);
    out["failures"] = rep.failures;
    out["worst_ratio"] = rep.worst_ratio;
    emit(o.out_path, dump_json(out));
  }
  return rep.failures == 0 ? 0 : 2;
}

int cmd_hairy(const Options& o) {
  const HairyParams h = hairy_constants(o.p, o.ell);
  if (pick_format(o, "csv") == "csv")
    emit(o.out_path, hairy_csv({h}));
  else
    emit(o.out_path, dump_json(hairy_to_json(h)));
  return 0;
}

int cmd_lift(const Options& o) {
  if (o.g < 2) fail(ErrorCode::DomainError, "lift needs --g >= 2");
  const int n = 2 * o.g + 2;
  const Surface s =
      gen_surface(o.seed, n, PunctureKind::ConePi, o.len_low, o.len_high);
  const PantsDecomposition p = detail::measure_family(s, s.reference, {});
  const LiftReport lr = hyperelliptic_lift(o.g, s, p);
  emit(o.out_path, dump_json(lift_to_json(lr)));
  return 0;
}

int cmd_bounds(const Options& o) {
  if (pick_format(o, "csv") == "csv") {
    emit(o.out_path, bounds_csv());
  } else {
    json rows = json::array();
    for (const BoundSpec& bs : bounds_catalog()) {
      const BoundValue v = evaluate_bound(bs.id, bs.sample);
      json e;
      e["bound_id"] = bs.id;
      e["params"] = bs.sample;
      e["value"] = v.value;
      e["direction"] = bound_direction_name(v.direction);
      e["formula"] = bs.formula;
      rows.push_back(std::move(e));
    }
    emit(o.out_path, dump_json(rows));
  }
  return 0;
}

int cmd_check(const Options& o) {
  std::vector<CheckResult> checks = consistency_suite();
  for (int n = 6; n <= 8; ++n) {
    const SeparationReport r = check_separation_lemma(n);
    CheckResult c;
    c.name = "separation_n" + std::to_string(n);
    c.pass = r.pass;
    c.detail = std::to_string(r.trees_checked) + " trees, " +
               std::to_string(r.pairs_checked) + " disjoint pairs, " +
               std::to_string(r.counterexamples) + " counterexamples";
    checks.push_back(std::move(c));
  }
  bool all = true;
  for (const CheckResult& c : checks) all = all && c.pass;
  if (pick_format(o, "csv") == "csv") {
    emit(o.out_path, check_csv(checks));
  } else {
    json rows = json::array();
    for (const CheckResult& c : checks) {
      json e;
      e["check"] = c.name;
      e["pass"] = c.pass;
      e["detail"] = c.detail;
      rows.push_back(std::move(e));
    }
    emit(o.out_path, dump_json(rows));
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"short pants decompositions of hyperbolic spheres"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd, bool with_lengths) {
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "output format: json or csv");
    if (with_lengths) {
      cmd->add_option("--len-low", o.len_low, "length distribution lower end");
      cmd->add_option("--len-high", o.len_high, "length distribution upper end");
    }
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a random surface");
  add_common(gen, true);
  gen->add_option("--n", o.n_text, "number of punctures (default 6)");
  gen->add_option("--kind", o.kind, "puncture kind: cusp, cone_pi or boundary");

  CLI::App* dec = app.add_subcommand("decompose", "short pants decomposition");
  add_common(dec, false);
  dec->add_option("--in", o.in_path, "surface JSON file")->required();
  dec->add_option("--base-n", o.base_n, "exhaustive-search cutoff");
  dec->add_option("--twist-depth", o.twist_depth, "twist search depth K");

  CLI::App* proj =
      app.add_subcommand("project", "insert a curve into a decomposition");
  add_common(proj, false);
  proj->add_option("--in", o.in_path, "instance JSON file")->required();
  proj->add_option("--twist-depth", o.twist_depth, "twist search depth K");

  CLI::App* sweep = app.add_subcommand("sweep", "bound-verification sweep");
  add_common(sweep, true);
  sweep->add_option("--n", o.n_text, "puncture count or range low:high (default 5:12)");
  sweep->add_option("--kind", o.kind, "puncture kind");
  sweep->add_option("--twist-depth", o.twist_depth, "twist search depth K");
  sweep->add_option("--base-n", o.base_n, "exhaustive-search cutoff");
  sweep->add_option("--trials", o.trials, "trials per puncture count");
  sweep->add_flag("--timings", o.timings,
                  "record wall-clock times (off by default so reruns match)");

  CLI::App* hairy = app.add_subcommand("hairy", "long-boundary constants");
  add_common(hairy, false);
  hairy->add_option("--p", o.p, "half the long-curve winding count")->required();
  hairy->add_option("--ell", o.ell, "boundary length parameter")->required();

  CLI::App* lift = app.add_subcommand("lift", "hyperelliptic double cover");
  add_common(lift, true);
  lift->add_option("--g", o.g, "genus of the cover")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "print the bound catalog");
  add_common(bounds, false);

  CLI::App* check =
      app.add_subcommand("check", "consistency suite and separation checks");
  add_common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (dec->parsed()) return cmd_decompose(o);
    if (proj->parsed()) return cmd_project(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (hairy->parsed()) return cmd_hairy(o);
    if (lift->parsed()) return cmd_lift(o);
    if (bounds->parsed()) return cmd_bounds(o);
    if (check->parsed()) return cmd_check(o);
  } catch (const bersdec::Error& e) {
    std::cerr << e.what() << "\n";
    const bersdec::ErrorCode c = e.code();
    return (c == bersdec::ErrorCode::ParseError ||
            c == bersdec::ErrorCode::DomainError)
               ? 1
               : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
