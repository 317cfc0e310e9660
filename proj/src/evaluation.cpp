#include "ailrs/evaluation.hpp"

#include <stdexcept>

namespace ailrs {

std::pair<int, int> lane_change_metrics(const std::vector<StepInfo>& infos) {
  int count = 0;
  int reward = 0;
  for (const StepInfo& info : infos) {
    if (info.maneuver_completed_event) ++count;
    if (info.midpoint_passed_event) ++reward;
  }
  return {count, reward};
}

EvalMetrics run_eval(const EnvConfig& cfg, Driver& driver, int episodes, std::uint64_t seed,
                     std::vector<EpisodeMetrics>* per_episode) {
  if (episodes < 1) throw std::invalid_argument("run_eval: episodes must be >= 1");
  cfg.validate();

  EvalMetrics metrics;
  metrics.episodes = episodes;
  metrics.seed = seed;
  if (per_episode) per_episode->clear();

  for (int e = 0; e < episodes; ++e) {
    const std::uint64_t episode_seed = derive_seed(seed, static_cast<std::uint64_t>(e));
    driver.begin_episode();
    auto [state, obs] = reset(cfg, episode_seed);
    std::vector<StepInfo> infos;
    infos.reserve(cfg.horizon);
    while (true) {
      const Decision d = driver.decide(state, obs);
      StepOutput out = step(state, d, cfg);
      infos.push_back(out.info);
      if (out.info.terminal != Terminal::None) break;
      obs = std::move(out.obs);
    }
    const auto [count, reward] = lane_change_metrics(infos);
    const bool collided = infos.back().terminal == Terminal::Collision;
    metrics.lane_change_count += count;
    metrics.lane_change_reward += reward;
    if (collided) metrics.collision_rate += 1.0;
    if (per_episode) per_episode->push_back(EpisodeMetrics{count, reward, collided});
  }
  metrics.lane_change_count /= episodes;
  metrics.lane_change_reward /= episodes;
  metrics.collision_rate /= episodes;
  return metrics;
}

NormalizedMetrics normalize_metrics(const EvalMetrics& policy, const EvalMetrics& expert) {
  if (!(expert.lane_change_count > 0) || !(expert.lane_change_reward > 0))
    throw std::runtime_error("normalize_metrics: expert metrics must be strictly positive");
  return NormalizedMetrics{policy.lane_change_count / expert.lane_change_count,
                           policy.lane_change_reward / expert.lane_change_reward};
}

}  // namespace ailrs
