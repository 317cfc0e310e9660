#include "ailrs/bc.hpp"

#include <cmath>
#include <stdexcept>

namespace ailrs {

namespace {

// Dense Cholesky solve of A w = b for several right-hand sides; A symmetric
// positive definite, overwritten with its factor.
std::vector<std::vector<double>> cholesky_solve(std::vector<std::vector<double>> A,
                                                std::vector<std::vector<double>> B,
                                                bool regularized) {
  const int n = static_cast<int>(A.size());
  for (int j = 0; j < n; ++j) {
    double d = A[j][j];
    for (int k = 0; k < j; ++k) d -= A[j][k] * A[j][k];
    if (d <= 1e-12) {
      if (!regularized)
        throw std::runtime_error(
            "ridge_fit: normal equations singular at lambda = 0; use lambda > 0");
      throw std::runtime_error("ridge_fit: normal equations not positive definite");
    }
    A[j][j] = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = A[i][j];
      for (int k = 0; k < j; ++k) s -= A[i][k] * A[j][k];
      A[i][j] = s / A[j][j];
    }
  }
  // forward then backward substitution per column of B
  const int m = static_cast<int>(B[0].size());
  for (int c = 0; c < m; ++c) {
    for (int i = 0; i < n; ++i) {
      double s = B[i][c];
      for (int k = 0; k < i; ++k) s -= A[i][k] * B[k][c];
      B[i][c] = s / A[i][i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = B[i][c];
      for (int k = i + 1; k < n; ++k) s -= A[k][i] * B[k][c];
      B[i][c] = s / A[i][i];
    }
  }
  return B;
}

}  // namespace

Mat ridge_fit(const std::vector<std::vector<double>>& X,
              const std::vector<std::vector<double>>& Y, double lambda) {
  if (X.empty() || X.size() != Y.size())
    throw std::invalid_argument("ridge_fit: X and Y must be non-empty and matched");
  if (lambda < 0) throw std::invalid_argument("ridge_fit: lambda must be >= 0");
  const int n = static_cast<int>(X[0].size());
  const int p = static_cast<int>(Y[0].size());

  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> B(n, std::vector<double>(p, 0.0));
  for (std::size_t r = 0; r < X.size(); ++r) {
    const auto& x = X[r];
    const auto& y = Y[r];
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != p)
      throw std::invalid_argument("ridge_fit: inconsistent row dimensions");
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) A[i][j] += x[i] * x[j];
      for (int c = 0; c < p; ++c) B[i][c] += x[i] * y[c];
    }
  }
  for (int i = 0; i < n; ++i) {
    A[i][i] += lambda;
    for (int j = 0; j < i; ++j) A[i][j] = A[j][i];
  }

  const auto W = cholesky_solve(std::move(A), std::move(B), lambda > 0);
  Mat theta(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) theta.at(i, j) = W[j][i];
  return theta;
}

BcResult bc_fit(const DemoDataset& dataset, double ridge_lambda) {
  if (dataset.pair_count() == 0) throw std::invalid_argument("bc_fit: dataset is empty");

  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> targets;
  states.reserve(dataset.pair_count());
  targets.reserve(dataset.pair_count());
  for (const Trajectory& t : dataset.episodes) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      states.push_back(t.states[i]);
      targets.push_back(one_hot(t.actions[i], dataset.p));
    }
  }

  RunningStats stats = update_stats(RunningStats(dataset.n), states);
  std::vector<std::vector<double>> X;
  X.reserve(states.size());
  for (const auto& s : states) X.push_back(normalize(stats, s));

  BcResult out;
  out.policy.theta = ridge_fit(X, targets, ridge_lambda);
  out.stats = std::move(stats);
  return out;
}

}  // namespace ailrs
