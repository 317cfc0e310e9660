#include "ailrs/env_config.hpp"

#include <stdexcept>

namespace ailrs {

void EnvConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("EnvConfig: " + msg); };
  if (lane_count < 2) fail("lane_count must be >= 2");
  if (!(lane_width > 0)) fail("lane_width must be > 0");
  if (!(road_length > 0)) fail("road_length must be > 0");
  if (!(dt > 0)) fail("dt must be > 0");
  if (horizon < 1) fail("horizon must be >= 1");
  if (beam_count < 4) fail("beam_count must be >= 4");
  if (!(lidar_range > 0)) fail("lidar_range must be > 0");
  if (traffic_density < 0) fail("traffic_density must be >= 0");
  if (!(traffic_speed_min >= 0) || traffic_speed_max < traffic_speed_min)
    fail("traffic_speed_range must satisfy 0 <= min <= max");
  if (!(host_speed_target > 0)) fail("host_speed_target must be > 0");
  if (!(lateral_rate > 0)) fail("lateral_rate must be > 0");
  if (!(vehicle_length > 0) || !(vehicle_width > 0)) fail("vehicle dimensions must be > 0");
  if (!(settle_tolerance > 0)) fail("settle_tolerance must be > 0");
}

void to_json(nlohmann::json& j, const EnvConfig& c) {
  j = nlohmann::json{
      {"lane_count", c.lane_count},
      {"lane_width", c.lane_width},
      {"road_length", c.road_length},
      {"dt", c.dt},
      {"horizon", c.horizon},
      {"beam_count", c.beam_count},
      {"lidar_range", c.lidar_range},
      {"traffic_density", c.traffic_density},
      {"traffic_speed_range", {c.traffic_speed_min, c.traffic_speed_max}},
      {"host_speed_target", c.host_speed_target},
      {"lateral_rate", c.lateral_rate},
      {"vehicle_length", c.vehicle_length},
      {"vehicle_width", c.vehicle_width},
      {"settle_tolerance", c.settle_tolerance},
  };
}

void from_json(const nlohmann::json& j, EnvConfig& c) {
  EnvConfig d;
  c.lane_count = j.value("lane_count", d.lane_count);
  c.lane_width = j.value("lane_width", d.lane_width);
  c.road_length = j.value("road_length", d.road_length);
  c.dt = j.value("dt", d.dt);
  c.horizon = j.value("horizon", d.horizon);
  c.beam_count = j.value("beam_count", d.beam_count);
  c.lidar_range = j.value("lidar_range", d.lidar_range);
  c.traffic_density = j.value("traffic_density", d.traffic_density);
  if (j.contains("traffic_speed_range")) {
    const auto& r = j.at("traffic_speed_range");
    if (!r.is_array() || r.size() != 2)
      throw std::invalid_argument("EnvConfig: traffic_speed_range must be [min, max]");
    c.traffic_speed_min = r[0].get<double>();
    c.traffic_speed_max = r[1].get<double>();
  } else {
    c.traffic_speed_min = d.traffic_speed_min;
    c.traffic_speed_max = d.traffic_speed_max;
  }
  c.host_speed_target = j.value("host_speed_target", d.host_speed_target);
  c.lateral_rate = j.value("lateral_rate", d.lateral_rate);
  c.vehicle_length = j.value("vehicle_length", d.vehicle_length);
  c.vehicle_width = j.value("vehicle_width", d.vehicle_width);
  c.settle_tolerance = j.value("settle_tolerance", d.settle_tolerance);
  c.validate();
}

}  // namespace ailrs
