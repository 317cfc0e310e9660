#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace ailrs {

// All geometry, traffic and controller constants of the highway simulator.
// The canonical defaults ship at configs/highway_default.json.
struct EnvConfig {
  int lane_count = 3;
  double lane_width = 3.7;       // m
  double road_length = 1000.0;   // m, positions wrap cyclically
  double dt = 0.1;               // s
  int horizon = 500;             // steps
  int beam_count = 24;
  double lidar_range = 50.0;     // m
  double traffic_density = 10.0; // vehicles per km per lane
  double traffic_speed_min = 20.0;
  double traffic_speed_max = 30.0;
  double host_speed_target = 30.0;
  double lateral_rate = 1.0;     // m/s
  double vehicle_length = 4.0;
  double vehicle_width = 1.8;
  double settle_tolerance = 0.2; // m

  // observation = beams + (speed, lateral offset, lateral velocity, lane index)
  int obs_dim() const { return beam_count + 4; }

  void validate() const;
};

void to_json(nlohmann::json& j, const EnvConfig& c);
void from_json(const nlohmann::json& j, EnvConfig& c);

}  // namespace ailrs
