#include <cmath>

#include "ailrs/highway_env.hpp"
#include "ailrs/rng.hpp"
#include "doctest.h"

using namespace ailrs;

namespace {

EnvConfig default_cfg() { return EnvConfig{}; }

EnvConfig empty_cfg() {
  EnvConfig cfg;
  cfg.traffic_density = 0.0;
  cfg.lane_width = 40.0;  // road edges beyond lidar range
  return cfg;
}

bool same_world(const WorldState& a, const WorldState& b) {
  if (a.host.longitudinal_pos != b.host.longitudinal_pos) return false;
  if (a.host.lateral_pos != b.host.lateral_pos) return false;
  if (a.host.speed != b.host.speed) return false;
  if (a.traffic.size() != b.traffic.size()) return false;
  for (std::size_t i = 0; i < a.traffic.size(); ++i) {
    if (a.traffic[i].longitudinal_pos != b.traffic[i].longitudinal_pos) return false;
    if (a.traffic[i].lateral_pos != b.traffic[i].lateral_pos) return false;
    if (a.traffic[i].speed != b.traffic[i].speed) return false;
  }
  return a.step_index == b.step_index;
}

}  // namespace

TEST_CASE("reset is bit-identical for identical config and seed") {
  const EnvConfig cfg = default_cfg();
  auto [s1, o1] = reset(cfg, 99);
  auto [s2, o2] = reset(cfg, 99);
  CHECK(same_world(s1, s2));
  CHECK(o1.to_vector() == o2.to_vector());
  auto [s3, o3] = reset(cfg, 100);
  CHECK_FALSE(same_world(s1, s3));
}

TEST_CASE("reset places the host in the center lane at target speed") {
  const EnvConfig cfg = default_cfg();
  auto [state, obs] = reset(cfg, 1);
  CHECK(nearest_lane(state.host.lateral_pos, cfg) == 1);
  CHECK(state.host.lateral_pos == lane_center(1, cfg));
  CHECK(state.host.speed == cfg.host_speed_target);
  CHECK(state.host.longitudinal_pos == 0.0);
  CHECK(obs.lateral_offset_in_lane == 0.0);
  CHECK(obs.lane_index_normalized == doctest::Approx(0.5));
}

TEST_CASE("zero traffic density gives an empty world and full-range beams") {
  const EnvConfig cfg = empty_cfg();
  auto [state, obs] = reset(cfg, 5);
  CHECK(state.traffic.empty());
  CHECK(obs.beams.size() == static_cast<std::size_t>(cfg.beam_count));
  for (double b : obs.beams) CHECK(b == cfg.lidar_range);
  CHECK(obs.to_vector().size() == static_cast<std::size_t>(cfg.obs_dim()));
}

TEST_CASE("traffic spawns clear of the host and with minimum gaps") {
  const EnvConfig cfg = default_cfg();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto [state, obs] = reset(cfg, seed);
    for (const Vehicle& v : state.traffic) {
      if (nearest_lane(v.lateral_pos, cfg) == 1) {
        const double dx = wrap_signed(v.longitudinal_pos, cfg.road_length);
        CHECK((dx <= -20.0 || dx >= 45.0));
      }
    }
  }
}

TEST_CASE("Keep with no traffic advances with the start-of-step speed") {
  const EnvConfig cfg = empty_cfg();
  auto [state, obs] = reset(cfg, 7);
  state.host.speed = 25.0;
  const double lat = state.host.lateral_pos;
  StepOutput out = step(state, Decision::Keep, cfg);
  CHECK(state.host.longitudinal_pos == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(state.host.lateral_pos == lat);
  // cruise acceleration toward the target, capped at 2 m/s^2
  CHECK(state.host.speed == doctest::Approx(25.2).epsilon(1e-12));
  CHECK(out.info.terminal == Terminal::None);
  CHECK_FALSE(out.info.clamped);
}

TEST_CASE("adaptive cruise brakes for a slower lead within the headway") {
  EnvConfig cfg = default_cfg();
  cfg.traffic_density = 0.0;
  auto [state, obs] = reset(cfg, 3);
  Vehicle lead;
  lead.longitudinal_pos = 20.0;
  lead.lateral_pos = state.host.lateral_pos;
  lead.speed = 20.0;
  state.traffic.push_back(lead);
  step(state, Decision::Keep, cfg);
  CHECK(state.host.speed == doctest::Approx(30.0 - 0.3).epsilon(1e-12));
}

TEST_CASE("decisions toward nonexistent lanes are clamped") {
  const EnvConfig cfg = empty_cfg();
  auto [state, obs] = reset(cfg, 2);
  // walk to the leftmost lane
  while (nearest_lane(state.host.lateral_pos, cfg) > 0 || state.maneuver)
    step(state, Decision::ChangeLeft, cfg);
  const double lat = state.host.lateral_pos;
  StepOutput out = step(state, Decision::ChangeLeft, cfg);
  CHECK(out.info.clamped);
  CHECK(state.host.lateral_pos == lat);
  CHECK_FALSE(state.maneuver.has_value());
}

TEST_CASE("overlapping rectangles terminate with a collision") {
  const EnvConfig cfg = empty_cfg();
  auto [state, obs] = reset(cfg, 4);
  Vehicle v;
  v.longitudinal_pos = 3.0;
  v.lateral_pos = state.host.lateral_pos;
  v.speed = state.host.speed;
  state.traffic.push_back(v);
  StepOutput out = step(state, Decision::Keep, cfg);
  CHECK(out.info.terminal == Terminal::Collision);
  CHECK_THROWS_AS(step(state, Decision::Keep, cfg), std::invalid_argument);
}

TEST_CASE("horizon terminates the episode") {
  EnvConfig cfg = empty_cfg();
  cfg.horizon = 5;
  auto [state, obs] = reset(cfg, 4);
  for (int i = 0; i < 4; ++i)
    CHECK(step(state, Decision::Keep, cfg).info.terminal == Terminal::None);
  CHECK(step(state, Decision::Keep, cfg).info.terminal == Terminal::HorizonReached);
  CHECK_THROWS_AS(step(state, Decision::Keep, cfg), std::invalid_argument);
}

TEST_CASE("lidar sees a vehicle 12 m ahead at 10 m") {
  const EnvConfig cfg = default_cfg();
  auto [state, obs] = reset(cfg, 8);
  state.traffic.clear();
  Vehicle v;
  v.longitudinal_pos = state.host.longitudinal_pos + 12.0;
  v.lateral_pos = state.host.lateral_pos;
  state.traffic.push_back(v);
  const auto beams = lidar_scan(state, cfg);
  CHECK(beams[0] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("lidar ignores vehicles beyond range") {
  const EnvConfig cfg = empty_cfg();
  auto [state, obs] = reset(cfg, 8);
  Vehicle v;
  v.longitudinal_pos = state.host.longitudinal_pos + 60.0;
  v.lateral_pos = state.host.lateral_pos;
  state.traffic.push_back(v);
  const auto beams = lidar_scan(state, cfg);
  for (double b : beams) CHECK(b == cfg.lidar_range);
}

TEST_CASE("lidar sees through the wrap to a vehicle behind") {
  const EnvConfig cfg = empty_cfg();
  auto [state, obs] = reset(cfg, 8);
  Vehicle v;
  // host at 0; a vehicle near the far end of the loop is 8 m behind
  v.longitudinal_pos = cfg.road_length - 8.0;
  v.lateral_pos = state.host.lateral_pos;
  state.traffic.push_back(v);
  const auto beams = lidar_scan(state, cfg);
  const int backward = cfg.beam_count / 2;
  CHECK(beams[backward] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(beams[0] == cfg.lidar_range);
}

TEST_CASE("lidar sees the road edges when in range") {
  EnvConfig cfg = default_cfg();
  cfg.traffic_density = 0.0;
  auto [state, obs] = reset(cfg, 8);
  const auto beams = lidar_scan(state, cfg);
  const int right = cfg.beam_count / 4;  // +y
  const int left = 3 * cfg.beam_count / 4;
  // host in lane 1 of 3: both edges are 1.5 lane widths away
  CHECK(beams[right] == doctest::Approx(1.5 * cfg.lane_width).epsilon(1e-12));
  CHECK(beams[left] == doctest::Approx(1.5 * cfg.lane_width).epsilon(1e-12));
  CHECK(beams[0] == cfg.lidar_range);
}

TEST_CASE("a full lane change fires midpoint, boundary and completion once") {
  const EnvConfig cfg = empty_cfg();
  auto [state, obs] = reset(cfg, 6);
  int midpoints = 0, completions = 0, boundaries = 0;
  bool done = false;
  // 40 m lanes at 0.1 m per step: 400 steps to settle
  for (int k = 0; k < 450 && !done; ++k) {
    StepOutput out = step(state, k == 0 ? Decision::ChangeRight : Decision::Keep, cfg);
    midpoints += out.info.midpoint_passed_event;
    completions += out.info.maneuver_completed_event;
    boundaries += out.info.boundary_crossed;
    if (out.info.maneuver_completed_event) {
      CHECK(std::abs(state.host.lateral_pos - lane_center(2, cfg)) <= cfg.settle_tolerance);
      done = true;
    }
  }
  CHECK(done);
  CHECK(midpoints == 1);
  CHECK(completions == 1);
  CHECK(boundaries == 1);
  CHECK_FALSE(state.maneuver.has_value());
}

TEST_CASE("reversal after the midpoint returns home: reward without count") {
  const EnvConfig cfg = default_cfg();  // 3.7 m lanes
  auto [state, obs] = reset(cfg, 6);
  state.traffic.clear();
  int midpoints = 0, completions = 0;
  auto run = [&](Decision d) {
    StepOutput out = step(state, d, cfg);
    midpoints += out.info.midpoint_passed_event;
    completions += out.info.maneuver_completed_event;
  };
  for (int k = 0; k < 20; ++k) run(Decision::ChangeRight);  // past the boundary at 1.85 m
  CHECK(midpoints == 1);
  run(Decision::ChangeLeft);  // reverse toward the origin lane
  CHECK(state.maneuver.has_value());
  CHECK(state.maneuver->target_lane == state.maneuver->origin_lane);
  for (int k = 0; k < 40 && state.maneuver; ++k) run(Decision::Keep);
  CHECK_FALSE(state.maneuver.has_value());
  CHECK(state.host.lateral_pos == lane_center(1, cfg));
  CHECK(midpoints == 1);
  CHECK(completions == 0);
}

TEST_CASE("reversal before the midpoint leaves no events") {
  const EnvConfig cfg = default_cfg();
  auto [state, obs] = reset(cfg, 6);
  state.traffic.clear();
  int midpoints = 0, completions = 0;
  auto run = [&](Decision d) {
    StepOutput out = step(state, d, cfg);
    midpoints += out.info.midpoint_passed_event;
    completions += out.info.maneuver_completed_event;
  };
  for (int k = 0; k < 5; ++k) run(Decision::ChangeRight);
  run(Decision::ChangeLeft);
  for (int k = 0; k < 20 && state.maneuver; ++k) run(Decision::Keep);
  CHECK_FALSE(state.maneuver.has_value());
  CHECK(midpoints == 0);
  CHECK(completions == 0);
}

TEST_CASE("full sequences are deterministic and observations stay bounded") {
  const EnvConfig cfg = default_cfg();
  RngStream dice(2024);
  for (int trial = 0; trial < 3; ++trial) {
    const std::uint64_t seed = dice.next_u64();
    std::vector<Decision> decisions;
    for (int k = 0; k < 200; ++k)
      decisions.push_back(static_cast<Decision>(static_cast<int>(dice.uniform() * 3)));

    auto [s1, o1] = reset(cfg, seed);
    auto [s2, o2] = reset(cfg, seed);
    CHECK(o1.to_vector() == o2.to_vector());
    for (Decision d : decisions) {
      if (s1.status != Terminal::None) break;
      const double lat_before = s1.host.lateral_pos;
      StepOutput a = step(s1, d, cfg);
      StepOutput b = step(s2, d, cfg);
      CHECK(a.obs.to_vector() == b.obs.to_vector());
      CHECK(a.info.terminal == b.info.terminal);
      // lateral progress bound
      CHECK(std::abs(s1.host.lateral_pos - lat_before) <=
            cfg.lateral_rate * cfg.dt + 1e-12);
      for (double v : a.obs.to_vector()) CHECK(std::isfinite(v));
      for (double bm : a.obs.beams) {
        CHECK(bm >= 0.0);
        CHECK(bm <= cfg.lidar_range);
      }
    }
  }
}

TEST_CASE("HighwayEnv adapter matches the functional api") {
  const EnvConfig cfg = default_cfg();
  HighwayEnv env(cfg);
  const auto v1 = env.reset(42);
  auto [state, obs] = reset(cfg, 42);
  CHECK(v1 == obs.to_vector());
  const auto r1 = env.step(Decision::Keep);
  const auto r2 = step(state, Decision::Keep, cfg);
  CHECK(r1.obs == r2.obs.to_vector());
}
