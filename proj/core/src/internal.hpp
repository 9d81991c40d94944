#pragma once

#include <algorithm>
#include <vector>

namespace ehsched::internal {

// Greedy schedule cost for a keep-mask without materializing the allocation
// (hot path of the exhaustive searches).
inline double greedy_cost_masked(const std::vector<double>& p_inv,
                                 const std::vector<double>& arrivals,
                                 double initial_storage, double price_conv,
                                 double price_renew,
                                 const std::vector<char>& keep) {
  const int n = static_cast<int>(p_inv.size());
  double stored = initial_storage;
  double sum_conv = 0.0, sum_renew = 0.0;
  for (int i = 0; i < n; ++i) {
    stored += arrivals[i];
    if (!keep[i]) continue;
    const double renew = std::min(p_inv[i], stored);
    sum_renew += renew;
    sum_conv += p_inv[i] - renew;
    stored -= renew;
  }
  return price_conv * sum_conv + price_renew * sum_renew;
}

} // namespace ehsched::internal
