#include "ailrs/running_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace ailrs {

RunningStats update_stats(const RunningStats& stats,
                          const std::vector<std::vector<double>>& batch) {
  if (batch.empty()) return stats;
  const int n = stats.dim();
  for (const auto& s : batch) {
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("update_stats: sample dimension mismatch");
  }

  // Welford over the batch.
  std::vector<double> bmean(n, 0.0), bm2(n, 0.0);
  std::uint64_t bcount = 0;
  for (const auto& s : batch) {
    ++bcount;
    for (int j = 0; j < n; ++j) {
      const double delta = s[j] - bmean[j];
      bmean[j] += delta / static_cast<double>(bcount);
      bm2[j] += delta * (s[j] - bmean[j]);
    }
  }

  RunningStats out(n);
  if (stats.count == 0) {
    out.mean = bmean;
    for (int j = 0; j < n; ++j) out.var[j] = bm2[j] / static_cast<double>(bcount);
    out.count = bcount;
    return out;
  }

  // Chan merge with the prior aggregate.
  const double na = static_cast<double>(stats.count);
  const double nb = static_cast<double>(bcount);
  const double nt = na + nb;
  out.count = stats.count + bcount;
  for (int j = 0; j < n; ++j) {
    const double m2a = stats.var[j] * na;
    const double delta = bmean[j] - stats.mean[j];
    out.mean[j] = stats.mean[j] + delta * (nb / nt);
    const double m2 = m2a + bm2[j] + delta * delta * (na * nb / nt);
    out.var[j] = m2 / nt;
  }
  return out;
}

std::vector<double> normalize(const RunningStats& stats, const std::vector<double>& s) {
  const int n = stats.dim();
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument("normalize: dimension mismatch");
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double d = (stats.count < 2 || stats.var[j] < 1e-8) ? 1.0 : std::sqrt(stats.var[j]);
    out[j] = (s[j] - stats.mean[j]) / d;
  }
  return out;
}

}  // namespace ailrs
