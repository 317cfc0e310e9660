#include "ailrs/highway_env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ailrs {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHeadwayBrake = 1.5;   // s
constexpr double kBrakeDecel = 3.0;     // m/s^2
constexpr double kCruiseAccel = 2.0;    // m/s^2
constexpr double kSpawnClearAhead = 45.0;
constexpr double kSpawnClearBehind = 20.0;

double wrap_pos(double x, double road_length) {
  x = std::fmod(x, road_length);
  if (x < 0) x += road_length;
  return x;
}

int sgn(double v) { return (v > 0) - (v < 0); }

// Ray from the origin along (dx, dy) against an axis-aligned rectangle
// centered at (cx, cy); returns the entry distance or +inf.
double ray_rect(double dx, double dy, double cx, double cy, double hx, double hy) {
  double tmin = 0.0;
  double tmax = std::numeric_limits<double>::infinity();
  const double o[2] = {0.0, 0.0};
  const double d[2] = {dx, dy};
  const double lo[2] = {cx - hx, cy - hy};
  const double hi[2] = {cx + hx, cy + hy};
  for (int a = 0; a < 2; ++a) {
    if (std::abs(d[a]) < 1e-12) {
      if (o[a] < lo[a] || o[a] > hi[a]) return std::numeric_limits<double>::infinity();
    } else {
      double t1 = (lo[a] - o[a]) / d[a];
      double t2 = (hi[a] - o[a]) / d[a];
      if (t1 > t2) std::swap(t1, t2);
      tmin = std::max(tmin, t1);
      tmax = std::min(tmax, t2);
      if (tmin > tmax) return std::numeric_limits<double>::infinity();
    }
  }
  return tmin;
}

bool lane_valid(int lane, const EnvConfig& cfg) { return lane >= 0 && lane < cfg.lane_count; }

// New host speed from the adaptive-cruise rule. Brakes when any vehicle in a
// watched lane (the host's nearest lane, plus the maneuver target) is ahead
// within the braking headway and not receding; otherwise tracks the target
// speed.
double acc_speed(const WorldState& state, const EnvConfig& cfg) {
  const Vehicle& host = state.host;
  const int cur = nearest_lane(host.lateral_pos, cfg);
  int watch[2] = {cur, cur};
  if (state.maneuver) watch[1] = state.maneuver->target_lane;

  bool brake = false;
  for (const Vehicle& v : state.traffic) {
    const int vl = nearest_lane(v.lateral_pos, cfg);
    if (vl != watch[0] && vl != watch[1]) continue;
    double fwd = wrap_pos(v.longitudinal_pos - host.longitudinal_pos, cfg.road_length);
    if (fwd > cfg.road_length / 2) continue;  // behind
    const double gap = fwd - (host.length + v.length) / 2;
    const double headway = gap / std::max(host.speed, 0.1);
    if (headway < kHeadwayBrake && v.speed < host.speed - 1e-9) {
      brake = true;
      break;
    }
  }

  double accel;
  if (brake) {
    accel = -kBrakeDecel;
  } else {
    accel = std::clamp((cfg.host_speed_target - host.speed) / cfg.dt, -kCruiseAccel, kCruiseAccel);
  }
  return std::max(0.0, host.speed + accel * cfg.dt);
}

}  // namespace

int nearest_lane(double lateral_pos, const EnvConfig& cfg) {
  const int lane = static_cast<int>(std::llround(lateral_pos / cfg.lane_width));
  return std::clamp(lane, 0, cfg.lane_count - 1);
}

double lane_center(int lane, const EnvConfig& cfg) { return lane * cfg.lane_width; }

double wrap_signed(double dx, double road_length) {
  dx = std::fmod(dx + road_length / 2, road_length);
  if (dx < 0) dx += road_length;
  return dx - road_length / 2;
}

std::vector<double> Observation::to_vector() const {
  std::vector<double> v;
  v.reserve(beams.size() + 4);
  v.insert(v.end(), beams.begin(), beams.end());
  v.push_back(host_speed);
  v.push_back(lateral_offset_in_lane);
  v.push_back(lateral_velocity);
  v.push_back(lane_index_normalized);
  return v;
}

std::vector<double> lidar_scan(const WorldState& state, const EnvConfig& cfg) {
  const Vehicle& host = state.host;
  std::vector<double> beams(cfg.beam_count, cfg.lidar_range);
  const double y_left = -cfg.lane_width / 2;
  const double y_right = (cfg.lane_count - 0.5) * cfg.lane_width;

  for (int k = 0; k < cfg.beam_count; ++k) {
    const double angle = 2.0 * kPi * k / cfg.beam_count;
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    double best = cfg.lidar_range;

    // road edges
    if (std::abs(dy) > 1e-12) {
      for (double edge : {y_left, y_right}) {
        const double t = (edge - host.lateral_pos) / dy;
        if (t >= 0) best = std::min(best, t);
      }
    }
    // traffic rectangles at their wrapped image nearest the host
    for (const Vehicle& v : state.traffic) {
      const double cx = wrap_signed(v.longitudinal_pos - host.longitudinal_pos, cfg.road_length);
      const double cy = v.lateral_pos - host.lateral_pos;
      const double t = ray_rect(dx, dy, cx, cy, v.length / 2, v.width / 2);
      if (t < best) best = t;
    }
    beams[k] = std::clamp(best, 0.0, cfg.lidar_range);
  }
  return beams;
}

Observation make_observation(const WorldState& state, const EnvConfig& cfg) {
  Observation obs;
  obs.beams = lidar_scan(state, cfg);
  obs.host_speed = state.host.speed;
  const int lane = nearest_lane(state.host.lateral_pos, cfg);
  obs.lateral_offset_in_lane = state.host.lateral_pos - lane_center(lane, cfg);
  obs.lateral_velocity = state.last_lateral_velocity;
  obs.lane_index_normalized = static_cast<double>(lane) / (cfg.lane_count - 1);
  return obs;
}

std::pair<WorldState, Observation> reset(const EnvConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  WorldState state;
  RngStream rng(mix64(seed));

  const int host_lane = cfg.lane_count / 2;
  state.host = Vehicle{0.0, lane_center(host_lane, cfg), cfg.host_speed_target,
                       cfg.vehicle_length, cfg.vehicle_width};

  if (cfg.traffic_density > 0) {
    const double mean_gap = 1000.0 / cfg.traffic_density;
    const double min_gap = 2.0 * cfg.vehicle_length;
    for (int lane = 0; lane < cfg.lane_count; ++lane) {
      const double lane_speed = rng.uniform(cfg.traffic_speed_min, cfg.traffic_speed_max);
      double pos = rng.uniform(0.0, mean_gap);
      while (pos < cfg.road_length - min_gap) {
        state.traffic.push_back(Vehicle{pos, lane_center(lane, cfg), lane_speed,
                                        cfg.vehicle_length, cfg.vehicle_width});
        pos += min_gap + rng.exponential(std::max(mean_gap - min_gap, 1.0));
      }
    }
    // keep the host's spawn neighborhood clear
    std::erase_if(state.traffic, [&](const Vehicle& v) {
      if (nearest_lane(v.lateral_pos, cfg) != host_lane) return false;
      const double dx = wrap_signed(v.longitudinal_pos, cfg.road_length);
      return dx > -kSpawnClearBehind && dx < kSpawnClearAhead;
    });
  }

  state.rng_stream = rng;
  return {state, make_observation(state, cfg)};
}

StepOutput step(WorldState& state, Decision decision, const EnvConfig& cfg) {
  if (state.status != Terminal::None)
    throw std::invalid_argument("step: state is terminal");

  StepInfo info;
  Vehicle& host = state.host;
  const double lat_before = host.lateral_pos;
  const int lane_before = nearest_lane(lat_before, cfg);

  // 1. decision -> maneuver. Targets follow the adjacent lane in the decided
  // direction; a decision against an outbound maneuver retargets its origin.
  const int dir = decision == Decision::ChangeLeft ? -1
                  : decision == Decision::ChangeRight ? 1 : 0;
  if (dir != 0) {
    if (!state.maneuver) {
      const int cand = lane_before + dir;
      if (lane_valid(cand, cfg)) {
        state.maneuver = Maneuver{lane_before, cand, false};
      } else {
        info.clamped = true;
      }
    } else {
      Maneuver& m = *state.maneuver;
      if (m.target_lane != m.origin_lane && dir == -sgn(m.target_lane - m.origin_lane)) {
        m.target_lane = m.origin_lane;
      } else {
        const int cand = lane_before + dir;
        if (cand == m.target_lane) {
          // continue as-is
        } else if (lane_valid(cand, cfg)) {
          m.target_lane = cand;
        } else {
          info.clamped = true;
        }
      }
    }
  }

  // 2. longitudinal advance with start-of-step speeds
  host.longitudinal_pos = wrap_pos(host.longitudinal_pos + host.speed * cfg.dt, cfg.road_length);
  for (Vehicle& v : state.traffic)
    v.longitudinal_pos = wrap_pos(v.longitudinal_pos + v.speed * cfg.dt, cfg.road_length);

  // 3. lateral advance toward the target lane center
  double lat_after = lat_before;
  if (state.maneuver) {
    const double target_c = lane_center(state.maneuver->target_lane, cfg);
    const double max_step = cfg.lateral_rate * cfg.dt;
    const double diff = target_c - lat_before;
    lat_after = std::abs(diff) <= max_step ? target_c : lat_before + sgn(diff) * max_step;
    host.lateral_pos = lat_after;
  }
  state.last_lateral_velocity = (lat_after - lat_before) / cfg.dt;

  // 4. adaptive cruise speed for the next step
  host.speed = acc_speed(state, cfg);

  // 5. maneuver events
  if (state.maneuver) {
    Maneuver& m = *state.maneuver;
    if (!m.passed_midpoint &&
        std::abs(lat_after - lane_center(m.origin_lane, cfg)) > cfg.lane_width / 2) {
      m.passed_midpoint = true;
      info.midpoint_passed_event = true;
    }
    if (lat_after == lane_center(m.target_lane, cfg)) {
      info.maneuver_completed_event = (m.target_lane != m.origin_lane);
      state.maneuver.reset();
    }
  }
  info.boundary_crossed = nearest_lane(lat_after, cfg) != lane_before;

  // 6. collision (wrapped rectangle overlap)
  for (const Vehicle& v : state.traffic) {
    const double ddx = wrap_signed(v.longitudinal_pos - host.longitudinal_pos, cfg.road_length);
    const double ddy = v.lateral_pos - host.lateral_pos;
    if (std::abs(ddx) < (host.length + v.length) / 2 &&
        std::abs(ddy) < (host.width + v.width) / 2) {
      state.status = Terminal::Collision;
      break;
    }
  }

  // 7. horizon
  state.step_index += 1;
  if (state.status == Terminal::None && state.step_index >= cfg.horizon)
    state.status = Terminal::HorizonReached;
  info.terminal = state.status;

  return StepOutput{make_observation(state, cfg), info};
}

}  // namespace ailrs
