#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "bersdec/bounds.hpp"
#include "bersdec/constructions.hpp"
#include "bersdec/decomp.hpp"
#include "bersdec/errors.hpp"
#include "bersdec/rng.hpp"
#include "bersdec/surface.hpp"

namespace bersdec {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int n_low = 5, n_high = 12;
  PunctureKind kind = PunctureKind::Cusp;
  double len_low = 0.5, len_high = 2.5;
  int twist_depth = 2;
  int base_n = 5;
  int trials = 20;
  bool timings = false;  // when false, time_ms is written as 0 so reruns match
};

inline void validate_config(const ExperimentConfig& c) {
  if (!(c.len_low > 0.0) || !(c.len_high >= c.len_low))
    fail(ErrorCode::DomainError, "lengths must satisfy 0 < low <= high");
  if (c.trials < 1) fail(ErrorCode::DomainError, "trials must be >= 1");
  if (c.twist_depth < 0) fail(ErrorCode::DomainError, "twist depth must be >= 0");
  if (c.n_low < 4 || c.n_high < c.n_low)
    fail(ErrorCode::DomainError, "puncture counts must satisfy 4 <= low <= high");
}

// Deterministic surface generator. Draw order is part of the contract:
// 1) the reference laminar family, 2) boundary lengths when the puncture
// kind needs them, 3) per-curve lengths, 4) per-curve twists in
// U[-length/2, length/2] (one fundamental domain of each twist circle).
inline Surface gen_surface(std::uint64_t seed, int n, PunctureKind kind,
                           double len_low, double len_high) {
  if (n < 4)
    fail(ErrorCode::DomainError,
         "need n >= 4 punctures, got " + std::to_string(n));
  if (!(len_low > 0.0) || !(len_high >= len_low))
    fail(ErrorCode::DomainError, "lengths must satisfy 0 < low <= high");
  SplitMix64 rng(seed);
  std::vector<Range> reference = random_laminar_family(n, rng);
  std::vector<Puncture> punctures(static_cast<std::size_t>(n));
  for (Puncture& p : punctures) {
    p.kind = kind;
    if (kind == PunctureKind::Boundary)
      p.length = rng.uniform(len_low, len_high);
  }
  std::vector<FNCoordinate> fn(reference.size());
  for (FNCoordinate& f : fn) f.length = rng.uniform(len_low, len_high);
  for (FNCoordinate& f : fn)
    f.twist = rng.uniform(-f.length / 2.0, f.length / 2.0);
  return build_surface(std::move(punctures), std::move(reference),
                       std::move(fn));
}

struct SweepRow {
  std::uint64_t seed = 0;
  int n = 0;
  PunctureKind kind = PunctureKind::Cusp;
  double max_len = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool certified_split_all = false;
  bool within_bound = false;
  std::int64_t time_ms = 0;
  std::string error;  // non-empty when the trial threw
};

struct SweepReport {
  std::vector<SweepRow> rows;
  int failures = 0;  // thrown errors plus bound violations
  double worst_ratio = 0.0;
  std::int64_t total_ms = 0;
};

namespace detail {

inline std::string num(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline int worker_count(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("BERSDEC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= 1024) hw = static_cast<unsigned>(v);
  }
  if (jobs == 0) jobs = 1;
  return static_cast<int>(hw < jobs ? hw : jobs);
}

}  // namespace detail

// Runs trials for every n in [n_low, n_high]. Per-trial seeds are
// seed XOR global-trial-index, so rows are independent of scheduling; the
// row order is fixed (n ascending, then trial index).
inline SweepReport run_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  struct Job {
    int n = 0;
    std::uint64_t seed = 0;
  };
  std::vector<Job> jobs;
  std::uint64_t index = 0;
  for (int n = cfg.n_low; n <= cfg.n_high; ++n)
    for (int t = 0; t < cfg.trials; ++t, ++index)
      jobs.push_back(Job{n, cfg.seed ^ index});

  SweepReport rep;
  rep.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      SweepRow& row = rep.rows[i];
      row.seed = jobs[i].seed;
      row.n = jobs[i].n;
      row.kind = cfg.kind;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Surface s = gen_surface(row.seed, row.n, cfg.kind, cfg.len_low,
                                      cfg.len_high);
        const BersResult r = bers_decompose(s, cfg.base_n, cfg.twist_depth);
        row.max_len = r.decomposition.max_length;
        row.bound = r.bound;
        row.ratio = row.bound > 0.0 ? row.max_len / row.bound : 0.0;
        row.within_bound = r.within_bound;
        row.certified_split_all = true;
        for (const BersTraceRow& tr : r.trace)
          if (!tr.certified || !tr.insertion_ok) row.certified_split_all = false;
      } catch (const Error& e) {
        row.error = e.what();
      }
      if (cfg.timings)
        row.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    }
  };

  const int workers = detail::worker_count(jobs.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  for (const SweepRow& row : rep.rows) {
    if (!row.error.empty() || !row.within_bound) ++rep.failures;
    if (row.ratio > rep.worst_ratio) rep.worst_ratio = row.ratio;
    rep.total_ms += row.time_ms;
  }
  return rep;
}

// One row per trial plus a trailing aggregate row. The aggregate reuses the
// same columns: seed column holds the literal "aggregate", n holds the row
// count, max_len/bound/ratio hold the worst observed values, and
// certified_split_all is 1 only if every row was certified and in bound.
inline std::string sweep_csv(const SweepReport& rep) {
  std::string out = "seed,n,kind,max_len,bound,ratio,certified_split_all,time_ms\n";
  double worst_max = 0.0, worst_bound = 0.0;
  bool all_ok = true;
  for (const SweepRow& r : rep.rows) {
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += puncture_kind_name(r.kind);
    out += ',';
    out += detail::num(r.max_len);
    out += ',';
    out += detail::num(r.bound);
    out += ',';
    out += detail::num(r.ratio);
    out += ',';
    out += (r.certified_split_all && r.error.empty()) ? '1' : '0';
    out += ',';
    out += std::to_string(r.time_ms);
    out += '\n';
    if (r.max_len > worst_max) worst_max = r.max_len;
    if (r.bound > worst_bound) worst_bound = r.bound;
    if (!r.certified_split_all || !r.within_bound || !r.error.empty())
      all_ok = false;
  }
  out += "aggregate," + std::to_string(rep.rows.size()) + ",all," +
         detail::num(worst_max) + ',' + detail::num(worst_bound) + ',' +
         detail::num(rep.worst_ratio) + ',' + (all_ok ? '1' : '0') + ',' +
         std::to_string(rep.total_ms) + '\n';
  return out;
}

inline std::string hairy_csv(const std::vector<HairyParams>& rows) {
  std::string out = "p,ell,x0,boundary_count,lower_bound\n";
  for (const HairyParams& h : rows)
    out += std::to_string(h.p) + ',' + detail::num(h.ell) + ',' +
           detail::num(h.x0) + ',' + std::to_string(h.boundary_count) + ',' +
           detail::num(h.lower_bound) + '\n';
  return out;
}

inline std::string bounds_csv() {
  std::string out = "bound_id,params,value,direction,formula\n";
  for (const BoundSpec& bs : bounds_catalog()) {
    const BoundValue v = evaluate_bound(bs.id, bs.sample);
    std::string params;
    for (const auto& [key, val] : bs.sample) {
      if (!params.empty()) params += ';';
      params += key + "=" + detail::num(val);
    }
    out += bs.id + ',' + detail::csv_field(params) + ',' +
           detail::num(v.value) + ',' + bound_direction_name(v.direction) +
           ',' + detail::csv_field(bs.formula) + '\n';
  }
  return out;
}

inline std::string check_csv(const std::vector<CheckResult>& checks) {
  std::string out = "check,pass,detail\n";
  for (const CheckResult& c : checks)
    out += c.name + ',' + (c.pass ? '1' : '0') + ',' +
           detail::csv_field(c.detail) + '\n';
  return out;
}

}  // namespace bersdec
