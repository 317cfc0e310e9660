#pragma once

#include <algorithm>
#include <cmath>

#include "ailrs/core.hpp"
#include "ailrs/linear_policy.hpp"
#include "ailrs/rng.hpp"
#include "ailrs/trainer.hpp"

namespace ailrs_test {

// 1-D point mass servoing toward a per-episode target. Observation is
// (target - pos, vel, pos, target); decisions map to accelerate left / coast /
// accelerate right. Used as a small imitation benchmark with a linear expert.
class PointMassEnv : public ailrs::EnvInterface {
 public:
  explicit PointMassEnv(int horizon = 40) : horizon_(horizon) {}

  int obs_dim() const override { return 4; }

  std::vector<double> reset(std::uint64_t seed) override {
    ailrs::RngStream rng(ailrs::mix64(seed));
    target_ = rng.uniform(-1.0, 1.0);
    pos_ = rng.uniform(-1.0, 1.0);
    vel_ = rng.uniform(-0.5, 0.5);
    t_ = 0;
    return obs();
  }

  Step step(ailrs::Decision d) override {
    const double u = static_cast<double>(ailrs::decision_index(d) - 1);
    vel_ = std::clamp(vel_ + 0.15 * u, -1.0, 1.0);
    pos_ = std::clamp(pos_ + 0.2 * vel_, -2.0, 2.0);
    ++t_;
    ailrs::StepInfo info;
    if (t_ >= horizon_) info.terminal = ailrs::Terminal::HorizonReached;
    return Step{obs(), info};
  }

  static std::vector<double> sample_state(ailrs::RngStream& rng) {
    const double target = rng.uniform(-1.0, 1.0);
    const double pos = rng.uniform(-1.0, 1.0);
    const double vel = rng.uniform(-0.5, 0.5);
    return {target - pos, vel, pos, target};
  }

 private:
  std::vector<double> obs() const { return {target_ - pos_, vel_, pos_, target_}; }

  int horizon_;
  double target_ = 0.0, pos_ = 0.0, vel_ = 0.0;
  int t_ = 0;
};

// Bang-bang servo expert: logits (-g, 0, g) with g = 2*(target-pos) - vel.
inline ailrs::PolicyParams point_mass_expert() {
  ailrs::PolicyParams theta(ailrs::kActionDim, 4);
  theta.theta.at(0, 0) = -2.0;
  theta.theta.at(0, 1) = 1.0;
  theta.theta.at(2, 0) = 2.0;
  theta.theta.at(2, 1) = -1.0;
  return theta;
}

inline std::vector<ailrs::StateAction> point_mass_demos(int episodes, std::uint64_t seed,
                                                        int horizon = 40) {
  const ailrs::PolicyParams expert = point_mass_expert();
  const ailrs::RunningStats identity(4);
  std::vector<ailrs::StateAction> pairs;
  for (int e = 0; e < episodes; ++e) {
    PointMassEnv env(horizon);
    const ailrs::Trajectory traj = ailrs::collect_rollout(
        env, expert, identity, ailrs::derive_seed(seed, static_cast<std::uint64_t>(e)));
    for (std::size_t i = 0; i < traj.size(); ++i)
      pairs.push_back(ailrs::StateAction{traj.states[i], traj.actions[i]});
  }
  return pairs;
}

}  // namespace ailrs_test
