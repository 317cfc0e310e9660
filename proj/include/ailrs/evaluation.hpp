#pragma once

#include <utility>
#include <vector>

#include "ailrs/expert.hpp"
#include "ailrs/highway_env.hpp"
#include "ailrs/linear_policy.hpp"

namespace ailrs {

struct EvalMetrics {
  double lane_change_count = 0.0;   // mean completed maneuvers per episode
  double lane_change_reward = 0.0;  // mean boundary passes per episode
  double collision_rate = 0.0;
  int episodes = 0;
  std::uint64_t seed = 0;
};

struct NormalizedMetrics {
  double count_ratio = 0.0;
  double reward_ratio = 0.0;
};

struct EpisodeMetrics {
  int lane_change_count = 0;
  int lane_change_reward = 0;
  bool collided = false;
};

// count = completed maneuvers (settled in a lane other than the origin);
// reward = boundary passes (midpoint events), completed or not. A maneuver
// that passes the boundary and returns scores reward without count.
std::pair<int, int> lane_change_metrics(const std::vector<StepInfo>& infos);

class Driver {
 public:
  virtual ~Driver() = default;
  virtual void begin_episode() {}
  virtual Decision decide(const WorldState& world, const Observation& obs) = 0;
};

class LinearDriver : public Driver {
 public:
  LinearDriver(PolicyParams params, RunningStats stats)
      : params_(std::move(params)), stats_(std::move(stats)) {}

  Decision decide(const WorldState&, const Observation& obs) override {
    return act(params_, stats_, obs.to_vector()).decision;
  }

 private:
  PolicyParams params_;
  RunningStats stats_;
};

class ExpertDriver : public Driver {
 public:
  ExpertDriver(ExpertRule rule, EnvConfig cfg) : policy_(rule, std::move(cfg)) {}

  void begin_episode() override { policy_.begin_episode(); }
  Decision decide(const WorldState& world, const Observation&) override {
    return policy_.decide(world);
  }

 private:
  ExpertPolicy policy_;
};

// Per-episode metrics averaged over seeded episodes; collision-truncated
// episodes still contribute the events observed before termination.
EvalMetrics run_eval(const EnvConfig& cfg, Driver& driver, int episodes, std::uint64_t seed,
                     std::vector<EpisodeMetrics>* per_episode = nullptr);

// Elementwise policy / expert ratios; zero expert metrics are an error.
NormalizedMetrics normalize_metrics(const EvalMetrics& policy, const EvalMetrics& expert);

}  // namespace ailrs
