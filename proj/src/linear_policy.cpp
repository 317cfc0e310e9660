#include "ailrs/linear_policy.hpp"

#include <cmath>
#include <stdexcept>

namespace ailrs {

Decision argmax_decision(const std::vector<double>& logits) {
  if (logits.size() != static_cast<std::size_t>(kActionDim))
    throw std::invalid_argument("argmax_decision: expected 3 logits");
  // scan in precedence order; only a strictly larger logit displaces the pick
  static constexpr int precedence[kActionDim] = {1, 0, 2};  // Keep, Left, Right
  int best = precedence[0];
  for (int k = 1; k < kActionDim; ++k) {
    const int i = precedence[k];
    if (logits[i] > logits[best]) best = i;
  }
  return static_cast<Decision>(best);
}

ActResult act(const PolicyParams& params, const RunningStats& stats,
              const std::vector<double>& s) {
  if (static_cast<int>(s.size()) != params.n())
    throw std::invalid_argument("act: state dimension mismatch");
  for (double v : s) {
    if (!std::isfinite(v)) throw std::runtime_error("act: non-finite state component");
  }
  const std::vector<double> z = normalize(stats, s);
  std::vector<double> logits(params.p(), 0.0);
  for (int i = 0; i < params.p(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < params.n(); ++j) acc += params.theta.at(i, j) * z[j];
    logits[i] = acc;
  }
  return ActResult{logits, argmax_decision(logits)};
}

PolicyParams perturb(const PolicyParams& params, const Perturbation& pert, int sign) {
  if (pert.delta.rows != params.p() || pert.delta.cols != params.n())
    throw std::invalid_argument("perturb: shape mismatch");
  if (sign != 1 && sign != -1) throw std::invalid_argument("perturb: sign must be +1 or -1");
  PolicyParams out = params;
  const double scale = static_cast<double>(sign) * pert.nu;
  for (std::size_t i = 0; i < out.theta.data.size(); ++i)
    out.theta.data[i] += scale * pert.delta.data[i];
  return out;
}

}  // namespace ailrs
