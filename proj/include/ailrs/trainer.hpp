#pragma once

#include <memory>
#include <vector>

#include "ailrs/core.hpp"
#include "ailrs/discriminator.hpp"
#include "ailrs/linear_policy.hpp"
#include "ailrs/rng.hpp"
#include "ailrs/running_stats.hpp"

namespace ailrs {

struct TrainConfig {
  double step_size = 0.02;          // alpha
  int directions = 16;              // N
  int top_k = 8;                    // K
  double perturb_std = 0.03;        // nu
  int iterations = 200;
  enum class Denominator { UseN, UseK };
  Denominator denominator_mode = Denominator::UseN;
  double sigma_floor = 1e-8;
  std::uint64_t master_seed = 1;
  int checkpoint_every = 10;

  void validate() const;
};

struct DirectionScore {
  int index = 0;
  double return_plus = 0.0;
  double return_minus = 0.0;
};

struct IterationRecord {
  int iteration = 0;
  double mean_return = 0.0;
  double max_return = 0.0;
  double sigma_r = 0.0;
  double disc_loss = 0.0;
  double lane_changes = 0.0;
  double lane_change_reward = 0.0;
  double wall_ms = 0.0;
};

// N matrices p x n with i.i.d. standard-normal entries, drawn row-major from
// the directions stream.
std::vector<Mat> sample_directions(RngStream& rng, int n_dirs, int p, int n);

// One episode under a fixed policy with frozen normalization statistics.
Trajectory collect_rollout(EnvInterface& env, const PolicyParams& params,
                           const RunningStats& stats, std::uint64_t env_seed);

struct Selection {
  std::vector<int> indices;  // descending by max(r+, r-), ties by lower index
  double sigma_r = 0.0;      // population std of the 2K retained returns
};

Selection score_and_select(const std::vector<DirectionScore>& scores, int top_k,
                           double sigma_floor);

struct SelectedDirection {
  const Mat* delta = nullptr;
  double return_plus = 0.0;
  double return_minus = 0.0;
};

// theta' = theta + alpha / (denominator * sigma_r) * sum (r+ - r-) * delta
Mat ars_update(const Mat& theta, const std::vector<SelectedDirection>& selected,
               double step_size, int denominator, double sigma_r);

// The outer loop: sample directions, roll out 2N perturbed policies on paired
// env seeds, update the discriminator from expert + fresh policy pairs, score
// trajectories with the updated discriminator, apply the top-K update, then
// refresh the running statistics from all 2N rollouts.
class Trainer {
 public:
  Trainer(TrainConfig cfg, DiscriminatorConfig disc_cfg, EnvFactory factory, int obs_dim,
          std::vector<StateAction> expert_pairs, std::unique_ptr<RewardModel> model);

  IterationRecord iterate();

  const PolicyParams& policy() const { return policy_; }
  const RunningStats& stats() const { return stats_; }
  int iteration() const { return iteration_; }

  void restore(PolicyParams policy, RunningStats stats, int iteration);

 private:
  TrainConfig cfg_;
  DiscriminatorConfig disc_cfg_;
  EnvFactory factory_;
  int obs_dim_;
  std::vector<StateAction> expert_pairs_;
  std::unique_ptr<RewardModel> model_;
  PolicyParams policy_;
  RunningStats stats_;
  RngStream dir_stream_, env_stream_, mb_stream_, eval_stream_;
  int iteration_ = 0;
};

}  // namespace ailrs
