#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bersdec/projection.hpp"
#include "bersdec/rng.hpp"

using namespace bersdec;

namespace {

using Emitted = std::vector<std::pair<std::string, double>>;

Emitted sorted_emissions(const CombinatorialInsertion& ins) {
  Emitted out;
  for (const PiecewiseCurve& c : ins.curves) out.push_back({c.kind, c.length});
  std::sort(out.begin(), out.end());
  return out;
}

void require_emissions(const CombinatorialInsertion& ins, Emitted expect) {
  std::sort(expect.begin(), expect.end());
  const Emitted got = sorted_emissions(ins);
  REQUIRE(got.size() == expect.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    INFO("emission " << i << ": " << got[i].first << " vs "
                     << expect[i].first);
    REQUIRE(got[i].first == expect[i].first);
    REQUIRE(got[i].second == Catch::Approx(expect[i].second).margin(1e-12));
  }
}

NormalArc arc(int id, double len, double s, double t, int hemi) {
  NormalArc a;
  a.pants_id = id;
  a.length = len;
  a.s = s;
  a.t = t;
  a.hemisphere = hemi;
  return a;
}

}  // namespace

TEST_CASE("single chord emits the two initial loops") {
  NormalPositionInstance inst;
  inst.gamma_length = 8.0;
  inst.arcs = {arc(0, 1.0, 1.0, 3.0, 0)};
  const CombinatorialInsertion ins = project_insert_combinatorial(inst, 2.0);
  REQUIRE(ins.restarts == 0);
  REQUIRE(ins.contains_gamma);
  REQUIRE(ins.gamma_length == 8.0);
  require_emissions(ins, {{"initial_inner", 3.0}, {"initial_outer", 7.0}});
}

TEST_CASE("chords on both sides are walked independently") {
  NormalPositionInstance inst;
  inst.gamma_length = 8.0;
  inst.arcs = {arc(0, 1.0, 1.0, 3.0, 0), arc(1, 1.0, 2.0, 6.0, 1)};
  const CombinatorialInsertion ins = project_insert_combinatorial(inst, 2.0);
  require_emissions(ins, {{"initial_inner", 3.0},
                          {"initial_outer", 7.0},
                          {"initial_inner", 5.0},
                          {"initial_outer", 5.0}});
  int hemi0 = 0, hemi1 = 0;
  for (const PiecewiseCurve& c : ins.curves)
    (c.hemisphere == 0 ? hemi0 : hemi1) += 1;
  REQUIRE(hemi0 == 2);
  REQUIRE(hemi1 == 2);
}

TEST_CASE("a two-sided face emits only when it carries a hole") {
  NormalPositionInstance inst;
  inst.gamma_length = 8.0;
  inst.arcs = {arc(0, 1.0, 1.0, 6.0, 0), arc(1, 1.0, 2.0, 5.0, 0)};

  const CombinatorialInsertion plain = project_insert_combinatorial(inst, 2.0);
  require_emissions(plain, {{"initial_inner", 6.0}, {"initial_outer", 4.0}});

  inst.holed = {FaceKey{0, 0}};
  const CombinatorialInsertion holed = project_insert_combinatorial(inst, 2.0);
  require_emissions(holed, {{"initial_inner", 6.0},
                            {"initial_outer", 4.0},
                            {"holed_quad", 4.0}});
}

TEST_CASE("a three-sided face emits one loop per far side") {
  NormalPositionInstance inst;
  inst.gamma_length = 16.0;
  inst.arcs = {arc(0, 1.0, 1.0, 11.0, 0), arc(1, 1.0, 2.0, 5.0, 0),
               arc(2, 1.0, 6.0, 10.0, 0)};
  const CombinatorialInsertion ins = project_insert_combinatorial(inst, 2.0);
  REQUIRE(ins.restarts == 0);
  require_emissions(ins, {{"initial_inner", 11.0},
                          {"initial_outer", 7.0},
                          {"hexagon", 4.0},
                          {"hexagon", 5.0}});
}

TEST_CASE("nested three-sided faces are walked recursively") {
  NormalPositionInstance inst;
  inst.gamma_length = 16.0;
  inst.arcs = {arc(0, 1.0, 1.0, 15.0, 0), arc(1, 1.0, 2.0, 9.0, 0),
               arc(2, 1.0, 10.0, 14.0, 0), arc(3, 1.0, 3.0, 5.0, 0),
               arc(4, 1.0, 6.0, 8.0, 0)};
  const CombinatorialInsertion ins = project_insert_combinatorial(inst, 2.0);
  REQUIRE(ins.restarts == 0);
  require_emissions(ins, {{"initial_inner", 15.0},
                          {"initial_outer", 3.0},
                          {"hexagon", 8.0},
                          {"hexagon", 5.0},
                          {"hexagon", 3.0},
                          {"hexagon", 3.0}});
}

TEST_CASE("a four-sided face pairing the entry with the middle chord") {
  NormalPositionInstance inst;
  inst.gamma_length = 16.0;
  inst.arcs = {arc(0, 1.0, 1.0, 15.0, 0), arc(1, 1.0, 2.0, 5.0, 0),
               arc(0, 1.0, 6.0, 9.0, 0), arc(2, 1.0, 10.0, 14.0, 0)};
  const CombinatorialInsertion ins = project_insert_combinatorial(inst, 2.0);
  REQUIRE(ins.restarts == 0);
  require_emissions(ins, {{"initial_inner", 15.0},
                          {"initial_outer", 3.0},
                          {"octagon_mid", 4.0},
                          {"octagon_side", 4.0},
                          {"octagon_side", 5.0},
                          {"octagon_pair_through", 13.0}});
}

TEST_CASE("a four-sided face pairing the two flanking chords") {
  NormalPositionInstance inst;
  inst.gamma_length = 16.0;
  inst.arcs = {arc(1, 1.0, 1.0, 3.0, 0), arc(2, 1.0, 4.0, 6.0, 0),
               arc(3, 1.0, 7.0, 9.0, 0), arc(2, 1.0, 10.0, 11.5, 0)};
  const CombinatorialInsertion ins = project_insert_combinatorial(inst, 2.0);
  REQUIRE(ins.restarts == 0);
  require_emissions(ins, {{"initial_inner", 3.0},
                          {"initial_outer", 15.0},
                          {"octagon_side", 3.0},
                          {"octagon_mid", 3.0},
                          {"octagon_side", 2.5},
                          {"octagon_pair_around", 13.5}});
}

TEST_CASE("a long flanking pair at the root forces one restart") {
  NormalPositionInstance inst;
  inst.gamma_length = 16.0;
  inst.arcs = {arc(0, 1.0, 0.5, 15.5, 0), arc(1, 1.0, 1.0, 2.0, 0),
               arc(2, 1.0, 7.0, 8.0, 0), arc(1, 1.0, 13.75, 14.75, 0)};
  const CombinatorialInsertion ins = project_insert_combinatorial(inst, 2.0);
  REQUIRE(ins.restarts == 1);
  require_emissions(ins, {{"initial_inner", 2.0},
                          {"initial_outer", 16.0},
                          {"octagon_mid", 2.0},
                          {"octagon_side", 2.0},
                          {"octagon_side", 2.0},
                          {"octagon_pair_through", 16.0}});
}

TEST_CASE("malformed instances are rejected") {
  const auto code_of =
      [](const NormalPositionInstance& inst,
         double p) -> std::optional<ErrorCode> {
    try {
      project_insert_combinatorial(inst, p);
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };

  NormalPositionInstance inst;
  inst.gamma_length = 8.0;
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);  // no arcs

  inst.arcs = {arc(0, 1.0, 1.0, 3.0, 0)};
  inst.gamma_length = 0.0;
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);

  inst.gamma_length = 8.0;
  inst.arcs = {arc(0, 3.0, 1.0, 3.0, 0)};  // longer than the pants bound
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);

  inst.arcs = {arc(0, 0.0, 1.0, 3.0, 0)};  // zero length
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);

  inst.arcs = {arc(0, 1.0, 1.0, 8.0, 0)};  // endpoint at L
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);

  inst.arcs = {arc(0, 1.0, 1.0, 3.0, 0), arc(1, 1.0, 3.0, 5.0, 0)};
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);  // shared point

  inst.arcs = {arc(0, 1.0, 1.0, 5.0, 0), arc(1, 1.0, 3.0, 7.0, 0)};
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);  // crossing

  inst.arcs = {arc(0, 1.0, 0.5, 1.0, 0), arc(1, 1.0, 1.5, 2.0, 0),
               arc(2, 1.0, 2.5, 3.0, 0), arc(3, 1.0, 3.5, 4.0, 0),
               arc(4, 1.0, 4.5, 5.0, 0)};  // five-sided outer face
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);

  inst.arcs = {arc(0, 1.0, 1.0, 3.0, 0)};
  inst.holed = {FaceKey{0, 0}};  // hole flag on a one-sided face
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);
  inst.holed.clear();

  // four-sided face whose equal-id chords are adjacent, not opposite
  inst.arcs = {arc(1, 1.0, 1.0, 3.0, 0), arc(1, 1.0, 4.0, 6.0, 0),
               arc(2, 1.0, 7.0, 9.0, 0), arc(3, 1.0, 10.0, 12.0, 0)};
  inst.gamma_length = 16.0;
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);

  // four-sided face with no repeated pants curve at all
  inst.arcs = {arc(1, 1.0, 1.0, 3.0, 0), arc(2, 1.0, 4.0, 6.0, 0),
               arc(3, 1.0, 7.0, 9.0, 0), arc(4, 1.0, 10.0, 12.0, 0)};
  REQUIRE(code_of(inst, 2.0) == ErrorCode::MalformedInstance);
}

TEST_CASE("synthesized instances stay within the additive bound") {
  SplitMix64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    double p_length = 0.0;
    const NormalPositionInstance inst = random_normal_instance(rng, &p_length);
    REQUIRE(p_length >= 1.0);
    REQUIRE(p_length < 8.0);
    REQUIRE(inst.gamma_length >= 2.0);
    REQUIRE(inst.gamma_length < 16.0);
    REQUIRE(!inst.arcs.empty());

    const CombinatorialInsertion ins =
        project_insert_combinatorial(inst, p_length);
    REQUIRE(ins.contains_gamma);
    REQUIRE(ins.restarts >= 0);
    REQUIRE(!ins.curves.empty());
    for (const PiecewiseCurve& c : ins.curves) {
      REQUIRE(c.length > 0.0);
      REQUIRE(c.length <= p_length + inst.gamma_length + 1e-9);
      REQUIRE((c.hemisphere == 0 || c.hemisphere == 1));
    }

    // the walk is deterministic in its input
    const CombinatorialInsertion again =
        project_insert_combinatorial(inst, p_length);
    REQUIRE(sorted_emissions(again) == sorted_emissions(ins));
    REQUIRE(again.restarts == ins.restarts);
  }
}
