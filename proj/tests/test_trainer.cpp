#include <cmath>
#include <cstdlib>
#include <mutex>

#include "ailrs/trainer.hpp"
#include "doctest.h"
#include "support/point_mass_env.hpp"

using namespace ailrs;
using ailrs_test::PointMassEnv;

namespace {

// fixed per-pair reward, no learning; used to stub the discriminator
class FixedRewardModel : public RewardModel {
 public:
  explicit FixedRewardModel(double per_pair) : per_pair_(per_pair) {}
  double update(const std::vector<StateAction>&, const std::vector<StateAction>&) override {
    return 0.0;
  }
  double trajectory_return(const Trajectory& traj) const override {
    return per_pair_ * static_cast<double>(traj.size());
  }

 private:
  double per_pair_;
};

// linear functional of the trajectory; gives direction-dependent returns
class LinearRewardModel : public RewardModel {
 public:
  double update(const std::vector<StateAction>&, const std::vector<StateAction>&) override {
    return 0.0;
  }
  double trajectory_return(const Trajectory& traj) const override {
    double total = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i)
      total += 1.3 * traj.states[i][0] - 0.7 * traj.states[i][1] + 0.25 * traj.actions[i];
    return total;
  }
};

class SeedRecordingEnv : public EnvInterface {
 public:
  SeedRecordingEnv(std::vector<std::uint64_t>* seeds, std::mutex* mu) : seeds_(seeds), mu_(mu) {}
  int obs_dim() const override { return inner_.obs_dim(); }
  std::vector<double> reset(std::uint64_t seed) override {
    {
      std::lock_guard<std::mutex> lock(*mu_);
      seeds_->push_back(seed);
    }
    return inner_.reset(seed);
  }
  Step step(Decision d) override { return inner_.step(d); }

 private:
  PointMassEnv inner_;
  std::vector<std::uint64_t>* seeds_;
  std::mutex* mu_;
};

TrainConfig small_train_cfg() {
  TrainConfig cfg;
  cfg.directions = 4;
  cfg.top_k = 2;
  cfg.master_seed = 5;
  return cfg;
}

DiscriminatorConfig small_disc_cfg() {
  DiscriminatorConfig cfg;
  cfg.hidden1 = 8;
  cfg.hidden2 = 8;
  cfg.minibatch_size = 16;
  return cfg;
}

std::vector<StateAction> tiny_expert_pairs() { return ailrs_test::point_mass_demos(2, 123); }

}  // namespace

TEST_CASE("sample_directions: shape, determinism, pooled moments") {
  RngStream a(101), b(101);
  const auto d1 = sample_directions(a, 3, 2, 5);
  const auto d2 = sample_directions(b, 3, 2, 5);
  REQUIRE(d1.size() == 3);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    CHECK(d1[i].rows == 2);
    CHECK(d1[i].cols == 5);
    CHECK(d1[i].data == d2[i].data);
  }

  RngStream rng(7);
  const auto dirs = sample_directions(rng, 1000, 8, 50);
  double sum = 0.0, sum2 = 0.0;
  std::size_t count = 0;
  for (const Mat& m : dirs) {
    for (double v : m.data) {
      sum += v;
      sum2 += v * v;
      ++count;
    }
  }
  const double mean = sum / count;
  const double var = sum2 / count - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("collect_rollout is deterministic per seed and bounded by the horizon") {
  const PolicyParams params = ailrs_test::point_mass_expert();
  const RunningStats stats(4);
  PointMassEnv env1(40), env2(40);
  const Trajectory t1 = collect_rollout(env1, params, stats, 99);
  const Trajectory t2 = collect_rollout(env2, params, stats, 99);
  CHECK(t1.states == t2.states);
  CHECK(t1.actions == t2.actions);
  CHECK(t1.size() <= 40);
  CHECK(t1.size() == 40);  // point mass only terminates at the horizon
  // zero perturbation keeps the pair identical on a shared seed
  Perturbation zero{Mat(kActionDim, 4), 0.0};
  PointMassEnv env3(40);
  const Trajectory t3 = collect_rollout(env3, perturb(params, zero, -1), stats, 99);
  CHECK(t3.states == t1.states);
  CHECK(t3.actions == t1.actions);
}

TEST_CASE("score_and_select hand example") {
  const std::vector<DirectionScore> scores{{0, 3.0, 1.0}, {1, 0.0, 2.0}, {2, 5.0, 4.0}};
  const Selection sel = score_and_select(scores, 2, 1e-8);
  REQUIRE(sel.indices.size() == 2);
  CHECK(sel.indices[0] == 2);
  CHECK(sel.indices[1] == 0);
  // population std of {5, 4, 3, 1}
  CHECK(sel.sigma_r == doctest::Approx(1.4790199457749038).epsilon(1e-12));
}

TEST_CASE("score_and_select keeps everything at K = N and floors degenerate sigma") {
  const std::vector<DirectionScore> scores{{0, 1.0, 1.0}, {1, 1.0, 1.0}};
  const Selection all = score_and_select(scores, 2, 1e-8);
  CHECK(all.indices.size() == 2);
  CHECK(all.indices[0] == 0);  // tie broken by lower index
  CHECK(all.sigma_r == 1e-8);
}

TEST_CASE("ars_update hand cases") {
  Mat theta(1, 2);
  theta.at(0, 0) = 0.5;
  Mat delta(1, 2);
  delta.at(0, 0) = 1.0;
  delta.at(0, 1) = -2.0;

  // equal returns cancel
  const Mat same = ars_update(theta, {{&delta, 3.0, 3.0}}, 0.7, 4, 1.0);
  CHECK(same.data == theta.data);

  // alpha 0.5, r+ 1, r- 0, sigma 0.5, denominator 1 -> theta + delta
  const Mat moved = ars_update(theta, {{&delta, 1.0, 0.0}}, 0.5, 1, 0.5);
  CHECK(moved.at(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(moved.at(0, 1) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("update invariances: shifting or scaling all returns changes nothing") {
  RngStream rng(55);
  const int n_dirs = 6, k = 3;
  std::vector<Mat> deltas(n_dirs, Mat(kActionDim, 5));
  std::vector<DirectionScore> scores(n_dirs);
  for (int i = 0; i < n_dirs; ++i) {
    for (double& v : deltas[i].data) v = rng.normal();
    scores[i] = DirectionScore{i, 10.0 * rng.uniform(), 10.0 * rng.uniform()};
  }
  Mat theta(kActionDim, 5);
  for (double& v : theta.data) v = rng.normal();

  auto apply = [&](const std::vector<DirectionScore>& sc) {
    const Selection sel = score_and_select(sc, k, 1e-8);
    std::vector<SelectedDirection> selected;
    for (int idx : sel.indices)
      selected.push_back({&deltas[idx], sc[idx].return_plus, sc[idx].return_minus});
    return ars_update(theta, selected, 0.02, n_dirs, sel.sigma_r);
  };

  const Mat base = apply(scores);

  std::vector<DirectionScore> shifted = scores;
  for (auto& s : shifted) {
    s.return_plus += 123.456;
    s.return_minus += 123.456;
  }
  const Mat with_shift = apply(shifted);
  for (std::size_t i = 0; i < base.data.size(); ++i)
    CHECK(std::abs(with_shift.data[i] - base.data[i]) < 1e-12);

  std::vector<DirectionScore> scaled = scores;
  for (auto& s : scaled) {
    s.return_plus *= 7.5;
    s.return_minus *= 7.5;
  }
  const Mat with_scale = apply(scaled);
  for (std::size_t i = 0; i < base.data.size(); ++i)
    CHECK(std::abs(with_scale.data[i] - base.data[i]) < 1e-12);
}

TEST_CASE("a discriminator frozen at D = 0.5 leaves theta unchanged") {
  Trainer trainer(small_train_cfg(), small_disc_cfg(),
                  []() { return std::make_unique<PointMassEnv>(40); }, 4, tiny_expert_pairs(),
                  std::make_unique<FixedRewardModel>(std::log(2.0)));
  const IterationRecord rec = trainer.iterate();
  for (double v : trainer.policy().theta.data) CHECK(v == 0.0);
  CHECK(rec.sigma_r == doctest::Approx(1e-8));
  // every state of the 2N rollouts entered the statistics
  CHECK(trainer.stats().count == 2ull * 4ull * 40ull);
}

TEST_CASE("identical master seeds give identical policy sequences") {
  auto make = []() {
    return Trainer(small_train_cfg(), small_disc_cfg(),
                   []() { return std::make_unique<PointMassEnv>(30); }, 4, tiny_expert_pairs(),
                   std::make_unique<LinearRewardModel>());
  };
  Trainer t1 = make();
  Trainer t2 = make();
  for (int i = 0; i < 3; ++i) {
    const IterationRecord r1 = t1.iterate();
    const IterationRecord r2 = t2.iterate();
    CHECK(t1.policy().theta.data == t2.policy().theta.data);
    CHECK(r1.mean_return == r2.mean_return);
    CHECK(r1.sigma_r == r2.sigma_r);
  }
  // theta moved under direction-dependent returns
  double norm = 0.0;
  for (double v : t1.policy().theta.data) norm += std::abs(v);
  CHECK(norm > 0.0);
}

TEST_CASE("results are independent of rollout parallelism") {
  auto run_with_threads = [&](const char* threads) {
    setenv("AILRS_THREADS", threads, 1);
    Trainer t(small_train_cfg(), small_disc_cfg(),
              []() { return std::make_unique<PointMassEnv>(30); }, 4, tiny_expert_pairs(),
              std::make_unique<LinearRewardModel>());
    t.iterate();
    t.iterate();
    unsetenv("AILRS_THREADS");
    return t.policy().theta.data;
  };
  CHECK(run_with_threads("1") == run_with_threads("4"));
}

TEST_CASE("the +/- rollouts of one direction share an environment seed") {
  std::vector<std::uint64_t> seeds;
  std::mutex mu;
  setenv("AILRS_THREADS", "1", 1);
  Trainer trainer(small_train_cfg(), small_disc_cfg(),
                  [&]() { return std::make_unique<SeedRecordingEnv>(&seeds, &mu); }, 4,
                  tiny_expert_pairs(), std::make_unique<LinearRewardModel>());
  trainer.iterate();
  unsetenv("AILRS_THREADS");
  // 2N training rollouts plus one telemetry rollout
  REQUIRE(seeds.size() == 9);
  for (int i = 0; i < 4; ++i) {
    CHECK(seeds[2 * i] == seeds[2 * i + 1]);
    if (i > 0) CHECK(seeds[2 * i] != seeds[2 * i - 2]);
  }
}

TEST_CASE("config validation") {
  TrainConfig bad = small_train_cfg();
  bad.top_k = 9;  // > directions
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = small_train_cfg();
  bad.step_size = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = small_train_cfg();
  bad.perturb_std = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
