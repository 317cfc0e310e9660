#include <cmath>

#include "ailrs/rng.hpp"
#include "ailrs/running_stats.hpp"
#include "doctest.h"

using namespace ailrs;

namespace {

// single-pass batch oracle: mean and population variance
void batch_oracle(const std::vector<std::vector<double>>& xs, std::vector<double>& mean,
                  std::vector<double>& var) {
  const int n = static_cast<int>(xs[0].size());
  mean.assign(n, 0.0);
  var.assign(n, 0.0);
  for (const auto& x : xs)
    for (int j = 0; j < n; ++j) mean[j] += x[j];
  for (int j = 0; j < n; ++j) mean[j] /= xs.size();
  for (const auto& x : xs)
    for (int j = 0; j < n; ++j) var[j] += (x[j] - mean[j]) * (x[j] - mean[j]);
  for (int j = 0; j < n; ++j) var[j] /= xs.size();
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

TEST_CASE("stream {0, 2} gives mean 1 and population variance 1") {
  RunningStats stats(1);
  stats = update_stats(stats, {{0.0}, {2.0}});
  CHECK(stats.mean[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stats.var[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stats.count == 2);
}

TEST_CASE("empty batch leaves stats unchanged") {
  RunningStats stats(2);
  stats = update_stats(stats, {{1.0, 2.0}});
  const RunningStats after = update_stats(stats, {});
  CHECK(after.mean == stats.mean);
  CHECK(after.var == stats.var);
  CHECK(after.count == stats.count);
}

TEST_CASE("two sequential batches match one concatenated batch") {
  RngStream rng(77);
  const int n = 4;
  std::vector<std::vector<double>> all;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> x(n);
    for (double& v : x) v = 10.0 * rng.normal() + 3.0;
    all.push_back(x);
  }
  const std::vector<std::vector<double>> first(all.begin(), all.begin() + 180);
  const std::vector<std::vector<double>> second(all.begin() + 180, all.end());

  RunningStats split(n);
  split = update_stats(split, first);
  split = update_stats(split, second);
  RunningStats whole(n);
  whole = update_stats(whole, all);

  for (int j = 0; j < n; ++j) {
    CHECK(rel_err(split.mean[j], whole.mean[j]) < 1e-10);
    CHECK(rel_err(split.var[j], whole.var[j]) < 1e-10);
  }
}

TEST_CASE("online statistics match the batch oracle over random splits") {
  RngStream rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3;
    const int total = 200 + static_cast<int>(rng.uniform() * 300);
    std::vector<std::vector<double>> all;
    for (int i = 0; i < total; ++i) {
      std::vector<double> x(n);
      for (double& v : x) v = rng.uniform(-5.0, 5.0) + 100.0 * rng.normal();
      all.push_back(x);
    }

    RunningStats stats(n);
    std::size_t pos = 0;
    while (pos < all.size()) {
      const std::size_t len =
          std::min(all.size() - pos, static_cast<std::size_t>(1 + rng.uniform() * 80));
      stats = update_stats(
          stats, std::vector<std::vector<double>>(all.begin() + pos, all.begin() + pos + len));
      pos += len;
    }

    std::vector<double> mean, var;
    batch_oracle(all, mean, var);
    CHECK(stats.count == all.size());
    for (int j = 0; j < n; ++j) {
      CHECK(rel_err(stats.mean[j], mean[j]) < 1e-10);
      CHECK(rel_err(stats.var[j], var[j]) < 1e-10);
    }
  }
}

TEST_CASE("count accumulates across updates") {
  RunningStats stats(1);
  stats = update_stats(stats, {{1.0}, {2.0}, {3.0}});
  stats = update_stats(stats, {{4.0}});
  CHECK(stats.count == 4);
}

TEST_CASE("dimension mismatch is rejected") {
  RunningStats stats(2);
  CHECK_THROWS_AS(update_stats(stats, {{1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(normalize(stats, {1.0, 2.0, 3.0}), std::invalid_argument);
}
