#include "lcp/policy.hpp"

namespace lcp {

PolicyRun run_policy(OnlinePolicy& policy, std::span<const double> x, std::size_t budget) {
  PolicyRun run;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (run.takes.size() < budget && policy.offer(i, x[i])) {
      run.takes.emplace_back(i, x[i]);
      run.total += x[i];
    } else if (run.takes.size() >= budget) {
      break;
    }
  }
  return run;
}

}  // namespace lcp
