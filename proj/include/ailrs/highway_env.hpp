#pragma once

#include <optional>
#include <vector>

#include "ailrs/core.hpp"
#include "ailrs/env_config.hpp"
#include "ailrs/rng.hpp"

namespace ailrs {

// Coordinates: x longitudinal in [0, road_length) (cyclic), y lateral with
// lane 0 centered at y = 0 and lane index increasing with y. Lane 0 is the
// leftmost lane; ChangeLeft decreases the lane index.
struct Vehicle {
  double longitudinal_pos = 0.0;
  double lateral_pos = 0.0;
  double speed = 0.0;
  double length = 4.0;
  double width = 1.8;
};

// A maneuver is the excursion from the last settled lane (origin) toward the
// current target. It ends when the host reaches the target lane center.
// Target == origin means the host is returning after a reversal.
struct Maneuver {
  int origin_lane = 0;
  int target_lane = 0;
  bool passed_midpoint = false;
};

struct WorldState {
  Vehicle host;
  std::vector<Vehicle> traffic;
  std::optional<Maneuver> maneuver;
  int step_index = 0;
  Terminal status = Terminal::None;
  double last_lateral_velocity = 0.0;
  RngStream rng_stream;
};

struct Observation {
  std::vector<double> beams;
  double host_speed = 0.0;
  double lateral_offset_in_lane = 0.0;
  double lateral_velocity = 0.0;
  double lane_index_normalized = 0.0;

  // [beams..., host_speed, lateral_offset, lateral_velocity, lane_index]
  std::vector<double> to_vector() const;
};

int nearest_lane(double lateral_pos, const EnvConfig& cfg);
double lane_center(int lane, const EnvConfig& cfg);

// signed wrap of dx into [-road_length/2, road_length/2)
double wrap_signed(double dx, double road_length);

// Host at longitudinal 0 in the center lane at target speed; traffic drawn
// per lane by a Poisson-gap process with per-lane constant speed (same-lane
// vehicles share a speed so traffic never collides with itself).
std::pair<WorldState, Observation> reset(const EnvConfig& cfg, std::uint64_t seed);

struct StepOutput {
  Observation obs;
  StepInfo info;
};

// Advances the world one tick: applies the decision to the maneuver state,
// moves host and traffic (explicit Euler with start-of-step speeds), runs the
// adaptive-cruise speed rule, then detects collisions and events.
// Throws if the state is already terminal.
StepOutput step(WorldState& state, Decision decision, const EnvConfig& cfg);

// B beams from the host center at angles 2*pi*k/B (k = 0 along +x, increasing
// toward +y). Beam = distance to the nearest traffic rectangle or road edge
// line, capped at lidar_range. Each vehicle is tested at its wrapped image
// nearest the host.
std::vector<double> lidar_scan(const WorldState& state, const EnvConfig& cfg);

Observation make_observation(const WorldState& state, const EnvConfig& cfg);

class HighwayEnv : public EnvInterface {
 public:
  explicit HighwayEnv(EnvConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

  int obs_dim() const override { return cfg_.obs_dim(); }

  std::vector<double> reset(std::uint64_t seed) override {
    auto [state, obs] = ailrs::reset(cfg_, seed);
    state_ = std::move(state);
    live_ = true;
    return obs.to_vector();
  }

  Step step(Decision d) override {
    if (!live_) throw std::logic_error("HighwayEnv: step before reset");
    StepOutput out = ailrs::step(state_, d, cfg_);
    return Step{out.obs.to_vector(), out.info};
  }

  const WorldState& world() const { return state_; }
  const EnvConfig& config() const { return cfg_; }

 private:
  EnvConfig cfg_;
  WorldState state_;
  bool live_ = false;
};

}  // namespace ailrs
