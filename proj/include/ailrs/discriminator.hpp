#pragma once

#include <cstdint>
#include <vector>

#include "ailrs/core.hpp"
#include "ailrs/rng.hpp"

namespace ailrs {

struct DiscriminatorConfig {
  double label_policy = 0.0;   // a
  double label_expert = 1.0;   // b
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  int minibatch_size = 128;
  int updates_per_iteration = 1;
  double d_clamp = 1e-6;
  int hidden1 = 64;
  int hidden2 = 64;
  enum class ReturnMode { Sum, Mean };
  ReturnMode return_mode = ReturnMode::Sum;

  void validate() const;
};

// Feed-forward net [input -> h1 -> h2 -> 1], tanh hiddens, sigmoid output.
// Weights are row-major [out][in].
struct DiscriminatorParams {
  int input_dim = 0;
  int h1 = 0;
  int h2 = 0;
  std::vector<double> w1, b1, w2, b2, w3, b3;

  int param_count() const;
  std::vector<double> flat() const;
  void set_flat(const std::vector<double>& v);

  static DiscriminatorParams zeros(int input_dim, int h1, int h2);
  // uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases
  static DiscriminatorParams init(int input_dim, int h1, int h2, RngStream& rng);
};

struct AdamState {
  std::vector<double> m, v;
  std::int64_t timestep = 0;

  AdamState() = default;
  explicit AdamState(int param_count) : m(param_count, 0.0), v(param_count, 0.0) {}
};

double forward_cat(const DiscriminatorParams& params, const std::vector<double>& input);

// D(s, a) = sigmoid(MLP(concat(s, a_onehot))), strictly inside (0, 1).
double forward(const DiscriminatorParams& params, const std::vector<double>& s,
               const std::vector<double>& a_onehot);

struct LsGradient {
  std::vector<double> grad;  // layout: w1, b1, w2, b2, w3, b3
  double loss = 0.0;
};

// Exact gradient of
//   L = 1/2 mean_expert[(D - b)^2] + 1/2 mean_policy[(D - a)^2].
// Action indices are expanded to one-hots of dimension input_dim - |s|.
LsGradient ls_gradient(const DiscriminatorParams& params,
                       const std::vector<StateAction>& expert_batch,
                       const std::vector<StateAction>& policy_batch,
                       const DiscriminatorConfig& cfg);

// Bias-corrected adaptive-moment step; mutates params and state.
void adam_step(DiscriminatorParams& params, const std::vector<double>& grad,
               AdamState& state, const DiscriminatorConfig& cfg);

// -log(1 - clamp(D, d_clamp, 1 - d_clamp)); always >= 0.
double pair_reward(const DiscriminatorParams& params, const std::vector<double>& s,
                   const std::vector<double>& a_onehot, const DiscriminatorConfig& cfg);

// Sum of pair rewards over the trajectory (mean if configured); empty -> 0.
double trajectory_return(const DiscriminatorParams& params, const Trajectory& traj,
                         const DiscriminatorConfig& cfg);

// Scoring/updating surface the trainer drives; stubbed in tests.
class RewardModel {
 public:
  virtual ~RewardModel() = default;
  virtual double update(const std::vector<StateAction>& expert_batch,
                        const std::vector<StateAction>& policy_batch) = 0;
  virtual double trajectory_return(const Trajectory& traj) const = 0;
};

class LsGanDiscriminator : public RewardModel {
 public:
  LsGanDiscriminator(DiscriminatorConfig cfg, int input_dim, std::uint64_t init_seed);
  LsGanDiscriminator(DiscriminatorConfig cfg, DiscriminatorParams params, AdamState adam);

  double update(const std::vector<StateAction>& expert_batch,
                const std::vector<StateAction>& policy_batch) override;
  double trajectory_return(const Trajectory& traj) const override;

  const DiscriminatorParams& params() const { return params_; }
  const AdamState& adam() const { return adam_; }
  const DiscriminatorConfig& config() const { return cfg_; }

 private:
  DiscriminatorConfig cfg_;
  DiscriminatorParams params_;
  AdamState adam_;
};

}  // namespace ailrs
