#pragma once

#include "ailrs/expert.hpp"
#include "ailrs/linear_policy.hpp"

namespace ailrs {

struct BcResult {
  PolicyParams policy;
  RunningStats stats;
};

// Ridge least squares: returns theta (p x n) minimizing
// sum_i |theta x_i - y_i|^2 + lambda |theta|^2, solved by normal equations
// with a Cholesky factorization. A singular system at lambda = 0 raises a
// conditioning error suggesting lambda > 0.
Mat ridge_fit(const std::vector<std::vector<double>>& X,
              const std::vector<std::vector<double>>& Y, double lambda);

// Behavioral cloning: running stats over all dataset states, then a ridge
// regression from normalized states to one-hot action targets. The result
// uses the same act() path as the trained policy.
BcResult bc_fit(const DemoDataset& dataset, double ridge_lambda);

}  // namespace ailrs
