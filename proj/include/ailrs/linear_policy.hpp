#pragma once

#include "ailrs/core.hpp"
#include "ailrs/running_stats.hpp"

namespace ailrs {

// Linear decision policy: logits = theta * normalize(stats, s), decision by
// argmax with tie precedence Keep > ChangeLeft > ChangeRight.
struct PolicyParams {
  Mat theta;  // p x n

  PolicyParams() = default;
  PolicyParams(int p, int n) : theta(p, n) {}

  int p() const { return theta.rows; }
  int n() const { return theta.cols; }
};

struct Perturbation {
  Mat delta;  // p x n
  double nu = 0.03;
};

struct ActResult {
  std::vector<double> logits;
  Decision decision;
};

Decision argmax_decision(const std::vector<double>& logits);

ActResult act(const PolicyParams& params, const RunningStats& stats,
              const std::vector<double>& s);

// theta +/- nu * delta; the input is left untouched.
PolicyParams perturb(const PolicyParams& params, const Perturbation& pert, int sign);

}  // namespace ailrs
