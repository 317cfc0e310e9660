#include "ailrs/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ailrs {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Activations {
  std::vector<double> x, h1, h2;
  double d = 0.0;
};

Activations run_forward(const DiscriminatorParams& p, const std::vector<double>& input) {
  if (static_cast<int>(input.size()) != p.input_dim)
    throw std::invalid_argument("discriminator: input dimension mismatch");
  for (double v : input) {
    if (!std::isfinite(v)) throw std::runtime_error("discriminator: non-finite input");
  }
  Activations a;
  a.x = input;
  a.h1.resize(p.h1);
  for (int i = 0; i < p.h1; ++i) {
    double z = p.b1[i];
    const double* w = &p.w1[static_cast<std::size_t>(i) * p.input_dim];
    for (int j = 0; j < p.input_dim; ++j) z += w[j] * input[j];
    a.h1[i] = std::tanh(z);
  }
  a.h2.resize(p.h2);
  for (int i = 0; i < p.h2; ++i) {
    double z = p.b2[i];
    const double* w = &p.w2[static_cast<std::size_t>(i) * p.h1];
    for (int j = 0; j < p.h1; ++j) z += w[j] * a.h1[j];
    a.h2[i] = std::tanh(z);
  }
  double z3 = p.b3[0];
  for (int j = 0; j < p.h2; ++j) z3 += p.w3[j] * a.h2[j];
  a.d = sigmoid(z3);
  return a;
}

std::vector<double> cat_input(const DiscriminatorParams& p, const StateAction& sa) {
  const int action_dim = p.input_dim - static_cast<int>(sa.state.size());
  if (action_dim < 1) throw std::invalid_argument("discriminator: state too wide for net");
  if (sa.action < 0 || sa.action >= action_dim)
    throw std::invalid_argument("discriminator: action index out of range");
  std::vector<double> x(sa.state);
  x.resize(p.input_dim, 0.0);
  x[sa.state.size() + sa.action] = 1.0;
  return x;
}

// Backprop one sample; upstream = dL/dD for this sample.
void accumulate(const DiscriminatorParams& p, const Activations& a, double upstream,
                LsGradient& out) {
  std::size_t off = 0;
  double* g_w1 = &out.grad[off];
  off += p.w1.size();
  double* g_b1 = &out.grad[off];
  off += p.b1.size();
  double* g_w2 = &out.grad[off];
  off += p.w2.size();
  double* g_b2 = &out.grad[off];
  off += p.b2.size();
  double* g_w3 = &out.grad[off];
  off += p.w3.size();
  double* g_b3 = &out.grad[off];

  const double d3 = upstream * a.d * (1.0 - a.d);
  for (int j = 0; j < p.h2; ++j) g_w3[j] += d3 * a.h2[j];
  g_b3[0] += d3;

  std::vector<double> d2(p.h2);
  for (int i = 0; i < p.h2; ++i) d2[i] = p.w3[i] * d3 * (1.0 - a.h2[i] * a.h2[i]);
  for (int i = 0; i < p.h2; ++i) {
    double* row = &g_w2[static_cast<std::size_t>(i) * p.h1];
    for (int j = 0; j < p.h1; ++j) row[j] += d2[i] * a.h1[j];
    g_b2[i] += d2[i];
  }

  std::vector<double> d1(p.h1, 0.0);
  for (int i = 0; i < p.h2; ++i) {
    const double* row = &p.w2[static_cast<std::size_t>(i) * p.h1];
    for (int j = 0; j < p.h1; ++j) d1[j] += row[j] * d2[i];
  }
  for (int j = 0; j < p.h1; ++j) d1[j] *= 1.0 - a.h1[j] * a.h1[j];
  for (int i = 0; i < p.h1; ++i) {
    double* row = &g_w1[static_cast<std::size_t>(i) * p.input_dim];
    for (int j = 0; j < p.input_dim; ++j) row[j] += d1[i] * a.x[j];
    g_b1[i] += d1[i];
  }
}

}  // namespace

void DiscriminatorConfig::validate() const {
  if (label_policy == label_expert)
    throw std::invalid_argument("DiscriminatorConfig: labels a and b must differ");
  if (!(learning_rate > 0)) throw std::invalid_argument("DiscriminatorConfig: learning_rate must be > 0");
  if (!(d_clamp > 0) || !(d_clamp < 0.5))
    throw std::invalid_argument("DiscriminatorConfig: d_clamp must be in (0, 0.5)");
  if (minibatch_size < 1) throw std::invalid_argument("DiscriminatorConfig: minibatch_size must be >= 1");
  if (updates_per_iteration < 0)
    throw std::invalid_argument("DiscriminatorConfig: updates_per_iteration must be >= 0");
  if (hidden1 < 1 || hidden2 < 1)
    throw std::invalid_argument("DiscriminatorConfig: hidden sizes must be >= 1");
}

int DiscriminatorParams::param_count() const {
  return static_cast<int>(w1.size() + b1.size() + w2.size() + b2.size() + w3.size() + b3.size());
}

std::vector<double> DiscriminatorParams::flat() const {
  std::vector<double> v;
  v.reserve(param_count());
  for (const auto* part : {&w1, &b1, &w2, &b2, &w3, &b3})
    v.insert(v.end(), part->begin(), part->end());
  return v;
}

void DiscriminatorParams::set_flat(const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != param_count())
    throw std::invalid_argument("set_flat: size mismatch");
  std::size_t off = 0;
  for (auto* part : {&w1, &b1, &w2, &b2, &w3, &b3}) {
    std::copy(v.begin() + off, v.begin() + off + part->size(), part->begin());
    off += part->size();
  }
}

DiscriminatorParams DiscriminatorParams::zeros(int input_dim, int h1, int h2) {
  if (input_dim < 1 || h1 < 1 || h2 < 1)
    throw std::invalid_argument("DiscriminatorParams: dimensions must be >= 1");
  DiscriminatorParams p;
  p.input_dim = input_dim;
  p.h1 = h1;
  p.h2 = h2;
  p.w1.assign(static_cast<std::size_t>(h1) * input_dim, 0.0);
  p.b1.assign(h1, 0.0);
  p.w2.assign(static_cast<std::size_t>(h2) * h1, 0.0);
  p.b2.assign(h2, 0.0);
  p.w3.assign(h2, 0.0);
  p.b3.assign(1, 0.0);
  return p;
}

DiscriminatorParams DiscriminatorParams::init(int input_dim, int h1, int h2, RngStream& rng) {
  DiscriminatorParams p = zeros(input_dim, h1, h2);
  auto fill = [&rng](std::vector<double>& w, int fan_in) {
    const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& x : w) x = rng.uniform(-s, s);
  };
  fill(p.w1, input_dim);
  fill(p.w2, h1);
  fill(p.w3, h2);
  return p;
}

double forward_cat(const DiscriminatorParams& params, const std::vector<double>& input) {
  return run_forward(params, input).d;
}

double forward(const DiscriminatorParams& params, const std::vector<double>& s,
               const std::vector<double>& a_onehot) {
  std::vector<double> x;
  x.reserve(s.size() + a_onehot.size());
  x.insert(x.end(), s.begin(), s.end());
  x.insert(x.end(), a_onehot.begin(), a_onehot.end());
  return forward_cat(params, x);
}

LsGradient ls_gradient(const DiscriminatorParams& params,
                       const std::vector<StateAction>& expert_batch,
                       const std::vector<StateAction>& policy_batch,
                       const DiscriminatorConfig& cfg) {
  if (expert_batch.empty() || policy_batch.empty())
    throw std::invalid_argument("ls_gradient: batches must be non-empty");
  LsGradient out;
  out.grad.assign(params.param_count(), 0.0);

  auto run_batch = [&](const std::vector<StateAction>& batch, double label) {
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (const StateAction& sa : batch) {
      const Activations a = run_forward(params, cat_input(params, sa));
      const double err = a.d - label;
      out.loss += 0.5 * err * err * inv;
      accumulate(params, a, err * inv, out);
    }
  };
  run_batch(expert_batch, cfg.label_expert);
  run_batch(policy_batch, cfg.label_policy);
  return out;
}

void adam_step(DiscriminatorParams& params, const std::vector<double>& grad,
               AdamState& state, const DiscriminatorConfig& cfg) {
  const int count = params.param_count();
  if (static_cast<int>(grad.size()) != count ||
      static_cast<int>(state.m.size()) != count)
    throw std::invalid_argument("adam_step: shape mismatch");
  std::vector<double> theta = params.flat();
  state.timestep += 1;
  const double bc1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(state.timestep));
  const double bc2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(state.timestep));
  for (int i = 0; i < count; ++i) {
    state.m[i] = cfg.adam_beta1 * state.m[i] + (1.0 - cfg.adam_beta1) * grad[i];
    state.v[i] = cfg.adam_beta2 * state.v[i] + (1.0 - cfg.adam_beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    theta[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
  }
  params.set_flat(theta);
}

double pair_reward(const DiscriminatorParams& params, const std::vector<double>& s,
                   const std::vector<double>& a_onehot, const DiscriminatorConfig& cfg) {
  const double d = forward(params, s, a_onehot);
  const double c = std::clamp(d, cfg.d_clamp, 1.0 - cfg.d_clamp);
  return -std::log1p(-c);
}

double trajectory_return(const DiscriminatorParams& params, const Trajectory& traj,
                         const DiscriminatorConfig& cfg) {
  if (traj.size() == 0) return 0.0;
  const int action_dim = params.input_dim - static_cast<int>(traj.states[0].size());
  double total = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    total += pair_reward(params, traj.states[i], one_hot(traj.actions[i], action_dim), cfg);
  if (cfg.return_mode == DiscriminatorConfig::ReturnMode::Mean)
    total /= static_cast<double>(traj.size());
  return total;
}

LsGanDiscriminator::LsGanDiscriminator(DiscriminatorConfig cfg, int input_dim,
                                       std::uint64_t init_seed)
    : cfg_(cfg) {
  cfg_.validate();
  RngStream rng(init_seed);
  params_ = DiscriminatorParams::init(input_dim, cfg_.hidden1, cfg_.hidden2, rng);
  adam_ = AdamState(params_.param_count());
}

LsGanDiscriminator::LsGanDiscriminator(DiscriminatorConfig cfg, DiscriminatorParams params,
                                       AdamState adam)
    : cfg_(cfg), params_(std::move(params)), adam_(std::move(adam)) {
  cfg_.validate();
  if (static_cast<int>(adam_.m.size()) != params_.param_count())
    throw std::invalid_argument("LsGanDiscriminator: adam state does not match params");
}

double LsGanDiscriminator::update(const std::vector<StateAction>& expert_batch,
                                  const std::vector<StateAction>& policy_batch) {
  LsGradient g = ls_gradient(params_, expert_batch, policy_batch, cfg_);
  adam_step(params_, g.grad, adam_, cfg_);
  return g.loss;
}

double LsGanDiscriminator::trajectory_return(const Trajectory& traj) const {
  return ailrs::trajectory_return(params_, traj, cfg_);
}

}  // namespace ailrs
