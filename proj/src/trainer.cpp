#include "ailrs/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ailrs/evaluation.hpp"
#include "ailrs/util.hpp"

namespace ailrs {

void TrainConfig::validate() const {
  if (!(step_size > 0)) throw std::invalid_argument("TrainConfig: step_size must be > 0");
  if (directions < 1) throw std::invalid_argument("TrainConfig: directions must be >= 1");
  if (top_k < 1 || top_k > directions)
    throw std::invalid_argument("TrainConfig: top_k must satisfy 1 <= K <= N");
  if (!(perturb_std > 0)) throw std::invalid_argument("TrainConfig: perturb_std must be > 0");
  if (iterations < 0) throw std::invalid_argument("TrainConfig: iterations must be >= 0");
  if (!(sigma_floor > 0)) throw std::invalid_argument("TrainConfig: sigma_floor must be > 0");
  if (checkpoint_every < 1) throw std::invalid_argument("TrainConfig: checkpoint_every must be >= 1");
}

std::vector<Mat> sample_directions(RngStream& rng, int n_dirs, int p, int n) {
  if (n_dirs < 1) throw std::invalid_argument("sample_directions: need at least one direction");
  std::vector<Mat> out;
  out.reserve(n_dirs);
  for (int i = 0; i < n_dirs; ++i) {
    Mat m(p, n);
    for (double& v : m.data) v = rng.normal();
    out.push_back(std::move(m));
  }
  return out;
}

Trajectory collect_rollout(EnvInterface& env, const PolicyParams& params,
                           const RunningStats& stats, std::uint64_t env_seed) {
  Trajectory traj;
  std::vector<double> obs = env.reset(env_seed);
  while (true) {
    const Decision d = act(params, stats, obs).decision;
    traj.states.push_back(obs);
    traj.actions.push_back(decision_index(d));
    EnvInterface::Step result = env.step(d);
    traj.infos.push_back(result.info);
    if (result.info.terminal != Terminal::None) break;
    obs = std::move(result.obs);
  }
  return traj;
}

Selection score_and_select(const std::vector<DirectionScore>& scores, int top_k,
                           double sigma_floor) {
  if (top_k < 1 || top_k > static_cast<int>(scores.size()))
    throw std::invalid_argument("score_and_select: 1 <= K <= |scores| required");
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&scores](int a, int b) {
    return std::max(scores[a].return_plus, scores[a].return_minus) >
           std::max(scores[b].return_plus, scores[b].return_minus);
  });
  order.resize(top_k);

  double sum = 0.0;
  for (int idx : order) sum += scores[idx].return_plus + scores[idx].return_minus;
  const double mean = sum / (2.0 * top_k);
  double ss = 0.0;
  for (int idx : order) {
    const double dp = scores[idx].return_plus - mean;
    const double dm = scores[idx].return_minus - mean;
    ss += dp * dp + dm * dm;
  }
  double sigma = std::sqrt(ss / (2.0 * top_k));
  if (sigma < sigma_floor) sigma = sigma_floor;
  return Selection{std::move(order), sigma};
}

Mat ars_update(const Mat& theta, const std::vector<SelectedDirection>& selected,
               double step_size, int denominator, double sigma_r) {
  if (selected.empty()) throw std::invalid_argument("ars_update: selected must be non-empty");
  if (!(sigma_r > 0)) throw std::invalid_argument("ars_update: sigma_r must be > 0");
  if (denominator < 1) throw std::invalid_argument("ars_update: denominator must be >= 1");
  Mat out = theta;
  const double scale = step_size / (static_cast<double>(denominator) * sigma_r);
  for (const SelectedDirection& s : selected) {
    if (s.delta->rows != theta.rows || s.delta->cols != theta.cols)
      throw std::invalid_argument("ars_update: direction shape mismatch");
    const double c = scale * (s.return_plus - s.return_minus);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += c * s.delta->data[i];
  }
  return out;
}

Trainer::Trainer(TrainConfig cfg, DiscriminatorConfig disc_cfg, EnvFactory factory,
                 int obs_dim, std::vector<StateAction> expert_pairs,
                 std::unique_ptr<RewardModel> model)
    : cfg_(cfg),
      disc_cfg_(disc_cfg),
      factory_(std::move(factory)),
      obs_dim_(obs_dim),
      expert_pairs_(std::move(expert_pairs)),
      model_(std::move(model)),
      policy_(kActionDim, obs_dim),
      stats_(obs_dim) {
  cfg_.validate();
  disc_cfg_.validate();
  if (!factory_) throw std::invalid_argument("Trainer: env factory required");
  if (!model_) throw std::invalid_argument("Trainer: reward model required");
  if (expert_pairs_.empty()) throw std::invalid_argument("Trainer: expert pairs required");
  for (const StateAction& sa : expert_pairs_) {
    if (static_cast<int>(sa.state.size()) != obs_dim_)
      throw std::invalid_argument("Trainer: expert pair dimension mismatch");
  }
  SeedStreams streams = seed_streams(cfg_.master_seed);
  dir_stream_ = streams.directions;
  env_stream_ = streams.env;
  mb_stream_ = streams.minibatch;
  eval_stream_ = streams.eval;
}

void Trainer::restore(PolicyParams policy, RunningStats stats, int iteration) {
  if (policy.p() != kActionDim || policy.n() != obs_dim_ || stats.dim() != obs_dim_)
    throw std::invalid_argument("Trainer::restore: dimension mismatch");
  policy_ = std::move(policy);
  stats_ = std::move(stats);
  iteration_ = iteration;
}

IterationRecord Trainer::iterate() {
  const auto t_start = std::chrono::steady_clock::now();
  const int n_dirs = cfg_.directions;
  const int rollouts = 2 * n_dirs;

  std::vector<Mat> directions = sample_directions(dir_stream_, n_dirs, kActionDim, obs_dim_);
  const std::uint64_t seed_base = env_stream_.next_u64();

  // 2N rollouts in fixed order (+d1, -d1, ..., +dN, -dN); the +/- pair of a
  // direction shares one env seed so both see identical traffic.
  std::vector<Trajectory> trajs(rollouts);
  parallel_for(rollouts, [&](int k) {
    const int i = k / 2;
    const int sign = (k % 2 == 0) ? 1 : -1;
    const PolicyParams perturbed =
        perturb(policy_, Perturbation{directions[i], cfg_.perturb_std}, sign);
    auto env = factory_();
    trajs[k] = collect_rollout(*env, perturbed, stats_, seed_base ^ static_cast<std::uint64_t>(i));
  });

  // Discriminator inputs are normalized with this iteration's frozen stats;
  // the same copies are scored below.
  std::vector<Trajectory> norm_trajs(rollouts);
  for (int k = 0; k < rollouts; ++k) {
    Trajectory t;
    t.actions = trajs[k].actions;
    t.infos = trajs[k].infos;
    t.states.reserve(trajs[k].size());
    for (const auto& s : trajs[k].states) t.states.push_back(normalize(stats_, s));
    norm_trajs[k] = std::move(t);
  }

  std::vector<StateAction> pool;
  for (const Trajectory& t : norm_trajs)
    for (std::size_t i = 0; i < t.size(); ++i)
      pool.push_back(StateAction{t.states[i], t.actions[i]});

  double disc_loss = 0.0;
  const int updates = disc_cfg_.updates_per_iteration;
  for (int u = 0; u < updates; ++u) {
    std::vector<StateAction> expert_batch, policy_batch;
    expert_batch.reserve(disc_cfg_.minibatch_size);
    policy_batch.reserve(disc_cfg_.minibatch_size);
    for (int b = 0; b < disc_cfg_.minibatch_size; ++b) {
      const std::size_t idx =
          static_cast<std::size_t>(mb_stream_.uniform() * expert_pairs_.size());
      const StateAction& sa = expert_pairs_[idx];
      expert_batch.push_back(StateAction{normalize(stats_, sa.state), sa.action});
    }
    for (int b = 0; b < disc_cfg_.minibatch_size; ++b) {
      const std::size_t idx = static_cast<std::size_t>(mb_stream_.uniform() * pool.size());
      policy_batch.push_back(pool[idx]);
    }
    disc_loss += model_->update(expert_batch, policy_batch);
  }
  if (updates > 0) disc_loss /= updates;

  // returns under the freshly updated discriminator
  std::vector<double> returns(rollouts, 0.0);
  parallel_for(rollouts, [&](int k) { returns[k] = model_->trajectory_return(norm_trajs[k]); });
  std::vector<DirectionScore> scores(n_dirs);
  for (int i = 0; i < n_dirs; ++i) scores[i] = DirectionScore{i, returns[2 * i], returns[2 * i + 1]};

  const Selection sel = score_and_select(scores, cfg_.top_k, cfg_.sigma_floor);
  std::vector<SelectedDirection> selected;
  selected.reserve(sel.indices.size());
  for (int idx : sel.indices)
    selected.push_back(SelectedDirection{&directions[idx], scores[idx].return_plus,
                                         scores[idx].return_minus});
  const int denominator =
      cfg_.denominator_mode == TrainConfig::Denominator::UseN ? cfg_.directions : cfg_.top_k;
  policy_.theta = ars_update(policy_.theta, selected, cfg_.step_size, denominator, sel.sigma_r);

  // statistics over every state of the 2N rollouts, direction then step order
  std::vector<std::vector<double>> all_states;
  for (const Trajectory& t : trajs)
    for (const auto& s : t.states) all_states.push_back(s);
  stats_ = update_stats(stats_, all_states);

  iteration_ += 1;

  // telemetry rollout of the unperturbed policy
  const std::uint64_t telemetry_seed = eval_stream_.next_u64();
  auto env = factory_();
  const Trajectory telemetry = collect_rollout(*env, policy_, stats_, telemetry_seed);
  const auto [changes, change_reward] = lane_change_metrics(telemetry.infos);

  IterationRecord rec;
  rec.iteration = iteration_;
  rec.mean_return = std::accumulate(returns.begin(), returns.end(), 0.0) / rollouts;
  rec.max_return = *std::max_element(returns.begin(), returns.end());
  rec.sigma_r = sel.sigma_r;
  rec.disc_loss = disc_loss;
  rec.lane_changes = changes;
  rec.lane_change_reward = change_reward;
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          t_start)
                    .count();
  return rec;
}

}  // namespace ailrs
