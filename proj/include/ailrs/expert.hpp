#pragma once

#include <string>
#include <vector>

#include "ailrs/core.hpp"
#include "ailrs/highway_env.hpp"

namespace ailrs {

struct ExpertRule {
  double headway_trigger = 2.0;      // s
  double front_gap_required = 20.0;  // m, bumper gap in the candidate lane
  double rear_gap_required = 10.0;   // m
  int cooldown = 30;                 // steps of Keep after each maneuver

  void validate() const;
};

// Privileged rule-based demonstrator. Continues any active maneuver; outside
// maneuvers and cooldown it changes lanes when the lead headway drops below
// the trigger and an adjacent lane has the required gaps, preferring left.
// Gaps are checked both now and projected to the moment the host's rectangle
// enters the candidate lane, so traffic approaching fast does not pass the
// check on current distance alone.
class ExpertPolicy {
 public:
  ExpertPolicy(ExpertRule rule, EnvConfig cfg);

  void begin_episode();
  Decision decide(const WorldState& world);

 private:
  ExpertRule rule_;
  EnvConfig cfg_;
  int cooldown_left_ = 0;
  bool was_in_maneuver_ = false;
};

struct DemoDataset {
  std::vector<Trajectory> episodes;
  EnvConfig env_config;
  ExpertRule rule;
  std::uint64_t seed = 0;
  int n = 0;
  int p = kActionDim;

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (const auto& e : episodes) c += e.size();
    return c;
  }
};

// Runs the expert for full-horizon episodes on seeded environments. An expert
// collision aborts with a diagnostic naming the episode seed.
DemoDataset generate_demos(const EnvConfig& cfg, const ExpertRule& rule, int episodes,
                           std::uint64_t seed);

std::vector<StateAction> pool_pairs(const DemoDataset& dataset);

// JSONL: one header line {env_config, rule, seed, n, p, episodes}, then one
// record per step {episode, step, s, a}.
void save_demos(const DemoDataset& dataset, const std::string& path);
DemoDataset load_demos(const std::string& path);

void to_json(nlohmann::json& j, const ExpertRule& r);
void from_json(const nlohmann::json& j, ExpertRule& r);

}  // namespace ailrs
