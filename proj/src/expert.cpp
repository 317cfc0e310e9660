#include "ailrs/expert.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ailrs/util.hpp"
#include "json.hpp"

namespace ailrs {

namespace {

struct LaneGaps {
  double front = std::numeric_limits<double>::infinity();
  double front_projected = std::numeric_limits<double>::infinity();
  double rear = std::numeric_limits<double>::infinity();
  double rear_projected = std::numeric_limits<double>::infinity();
};

// Bumper gaps to the nearest vehicles of one lane, current and projected to
// the lateral-entry time of a lane change.
LaneGaps lane_gaps(const WorldState& w, int lane, const EnvConfig& cfg) {
  LaneGaps g;
  const double t_entry =
      (cfg.lane_width - (w.host.width + cfg.vehicle_width) / 2) / cfg.lateral_rate;
  for (const Vehicle& v : w.traffic) {
    if (nearest_lane(v.lateral_pos, cfg) != lane) continue;
    const double dx = wrap_signed(v.longitudinal_pos - w.host.longitudinal_pos, cfg.road_length);
    const double body = (w.host.length + v.length) / 2;
    if (dx >= 0) {
      const double gap = dx - body;
      const double projected = gap + (v.speed - w.host.speed) * t_entry;
      if (gap < g.front) g.front = gap;
      if (projected < g.front_projected) g.front_projected = projected;
    } else {
      const double gap = -dx - body;
      const double projected = gap - (v.speed - w.host.speed) * t_entry;
      if (gap < g.rear) g.rear = gap;
      if (projected < g.rear_projected) g.rear_projected = projected;
    }
  }
  return g;
}

bool lane_clear(const WorldState& w, int lane, const ExpertRule& rule, const EnvConfig& cfg) {
  const LaneGaps g = lane_gaps(w, lane, cfg);
  return std::min(g.front, g.front_projected) >= rule.front_gap_required &&
         std::min(g.rear, g.rear_projected) >= rule.rear_gap_required;
}

double lead_headway(const WorldState& w, int lane, const EnvConfig& cfg) {
  const LaneGaps g = lane_gaps(w, lane, cfg);
  if (!std::isfinite(g.front)) return std::numeric_limits<double>::infinity();
  return g.front / std::max(w.host.speed, 0.1);
}

}  // namespace

void ExpertRule::validate() const {
  if (!(headway_trigger > 0) || !(front_gap_required > 0) || !(rear_gap_required > 0) ||
      cooldown <= 0)
    throw std::invalid_argument("ExpertRule: all fields must be positive");
}

ExpertPolicy::ExpertPolicy(ExpertRule rule, EnvConfig cfg)
    : rule_(rule), cfg_(std::move(cfg)) {
  rule_.validate();
}

void ExpertPolicy::begin_episode() {
  cooldown_left_ = 0;
  was_in_maneuver_ = false;
}

Decision ExpertPolicy::decide(const WorldState& world) {
  if (world.status != Terminal::None)
    throw std::invalid_argument("ExpertPolicy: world is terminal");
  const bool in_maneuver = world.maneuver.has_value();
  if (was_in_maneuver_ && !in_maneuver) cooldown_left_ = rule_.cooldown;
  was_in_maneuver_ = in_maneuver;

  if (in_maneuver) return Decision::Keep;
  if (cooldown_left_ > 0) {
    --cooldown_left_;
    return Decision::Keep;
  }

  const int cur = nearest_lane(world.host.lateral_pos, cfg_);
  if (lead_headway(world, cur, cfg_) >= rule_.headway_trigger) return Decision::Keep;

  if (cur - 1 >= 0 && lane_clear(world, cur - 1, rule_, cfg_)) return Decision::ChangeLeft;
  if (cur + 1 < cfg_.lane_count && lane_clear(world, cur + 1, rule_, cfg_))
    return Decision::ChangeRight;
  return Decision::Keep;
}

DemoDataset generate_demos(const EnvConfig& cfg, const ExpertRule& rule, int episodes,
                           std::uint64_t seed) {
  if (episodes < 1) throw std::invalid_argument("generate_demos: episodes must be >= 1");
  cfg.validate();
  rule.validate();

  DemoDataset dataset;
  dataset.env_config = cfg;
  dataset.rule = rule;
  dataset.seed = seed;
  dataset.n = cfg.obs_dim();
  dataset.episodes.resize(episodes);

  for (int e = 0; e < episodes; ++e) {
    const std::uint64_t episode_seed = derive_seed(seed, static_cast<std::uint64_t>(e));
    ExpertPolicy expert(rule, cfg);
    expert.begin_episode();
    auto [state, obs] = reset(cfg, episode_seed);
    Trajectory traj;
    while (true) {
      const Decision d = expert.decide(state);
      traj.states.push_back(obs.to_vector());
      traj.actions.push_back(decision_index(d));
      StepOutput out = step(state, d, cfg);
      traj.infos.push_back(out.info);
      if (out.info.terminal == Terminal::Collision) {
        std::ostringstream msg;
        msg << "generate_demos: expert collision in episode " << e << " (seed "
            << episode_seed << ")";
        throw std::runtime_error(msg.str());
      }
      if (out.info.terminal != Terminal::None) break;
      obs = std::move(out.obs);
    }
    dataset.episodes[e] = std::move(traj);
  }
  return dataset;
}

std::vector<StateAction> pool_pairs(const DemoDataset& dataset) {
  std::vector<StateAction> pairs;
  pairs.reserve(dataset.pair_count());
  for (const Trajectory& t : dataset.episodes)
    for (std::size_t i = 0; i < t.size(); ++i)
      pairs.push_back(StateAction{t.states[i], t.actions[i]});
  return pairs;
}

void to_json(nlohmann::json& j, const ExpertRule& r) {
  j = nlohmann::json{{"headway_trigger", r.headway_trigger},
                     {"front_gap_required", r.front_gap_required},
                     {"rear_gap_required", r.rear_gap_required},
                     {"cooldown", r.cooldown}};
}

void from_json(const nlohmann::json& j, ExpertRule& r) {
  ExpertRule d;
  r.headway_trigger = j.value("headway_trigger", d.headway_trigger);
  r.front_gap_required = j.value("front_gap_required", d.front_gap_required);
  r.rear_gap_required = j.value("rear_gap_required", d.rear_gap_required);
  r.cooldown = j.value("cooldown", d.cooldown);
  r.validate();
}

void save_demos(const DemoDataset& dataset, const std::string& path) {
  std::string out;
  nlohmann::json header{{"kind", "ailrs_demos"},
                        {"env_config", dataset.env_config},
                        {"rule", dataset.rule},
                        {"seed", dataset.seed},
                        {"n", dataset.n},
                        {"p", dataset.p},
                        {"episodes", dataset.episodes.size()}};
  out += header.dump();
  out += '\n';
  for (std::size_t e = 0; e < dataset.episodes.size(); ++e) {
    const Trajectory& t = dataset.episodes[e];
    for (std::size_t i = 0; i < t.size(); ++i) {
      nlohmann::json rec{{"episode", e},
                         {"step", i},
                         {"s", t.states[i]},
                         {"a", one_hot(t.actions[i], dataset.p)}};
      out += rec.dump();
      out += '\n';
    }
  }
  atomic_write_file(path, out);
}

DemoDataset load_demos(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("demo file empty: " + path);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("demo header unreadable in " + path + ": " + e.what());
  }
  if (header.value("kind", "") != "ailrs_demos")
    throw std::runtime_error("not a demo file: " + path);

  DemoDataset dataset;
  dataset.env_config = header.at("env_config").get<EnvConfig>();
  dataset.rule = header.at("rule").get<ExpertRule>();
  dataset.seed = header.at("seed").get<std::uint64_t>();
  dataset.n = header.at("n").get<int>();
  dataset.p = header.at("p").get<int>();
  dataset.episodes.resize(header.at("episodes").get<std::size_t>());

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("demo record unreadable at line " + std::to_string(line_no) +
                               " in " + path + ": " + e.what());
    }
    const std::size_t e = rec.at("episode").get<std::size_t>();
    if (e >= dataset.episodes.size())
      throw std::runtime_error("demo record episode out of range in " + path);
    auto s = rec.at("s").get<std::vector<double>>();
    auto a = rec.at("a").get<std::vector<double>>();
    if (static_cast<int>(s.size()) != dataset.n || static_cast<int>(a.size()) != dataset.p)
      throw std::runtime_error("demo record dimension mismatch in " + path);
    int action = -1;
    for (int k = 0; k < dataset.p; ++k) {
      if (a[k] == 1.0) {
        if (action >= 0) throw std::runtime_error("demo record action not one-hot in " + path);
        action = k;
      } else if (a[k] != 0.0) {
        throw std::runtime_error("demo record action not one-hot in " + path);
      }
    }
    if (action < 0) throw std::runtime_error("demo record action not one-hot in " + path);
    dataset.episodes[e].states.push_back(std::move(s));
    dataset.episodes[e].actions.push_back(action);
  }
  if (dataset.pair_count() == 0) throw std::runtime_error("demo file has no records: " + path);
  return dataset;
}

}  // namespace ailrs
