#pragma once

#include <cstdint>
#include <vector>

namespace ailrs {

// Per-dimension running mean and population variance over every state seen
// since the start of training. Fresh stats normalize to the identity, which
// matches the zero-mean / unit-covariance initialization of the policy.
struct RunningStats {
  std::vector<double> mean;
  std::vector<double> var;  // population variance
  std::uint64_t count = 0;

  RunningStats() = default;
  explicit RunningStats(int dim) : mean(dim, 0.0), var(dim, 0.0) {}

  int dim() const { return static_cast<int>(mean.size()); }
};

// Online merge of a batch into existing statistics (Welford accumulation,
// Chan merge with the prior aggregate). Result equals the single-pass batch
// computation over everything ever accumulated, within 1e-10 relative.
// Samples are consumed in the order given; an empty batch is the identity.
RunningStats update_stats(const RunningStats& stats,
                          const std::vector<std::vector<double>>& batch);

// (s - mean) / sqrt(var); dimensions with var < 1e-8, or stats with fewer
// than two samples, divide by 1.
std::vector<double> normalize(const RunningStats& stats, const std::vector<double>& s);

}  // namespace ailrs
