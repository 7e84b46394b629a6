#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lcp/common.hpp"

namespace lcp {

// An online selector: sees arrival values one at a time, decides take/skip.
// reset() must restore the state right after construction, so a policy can be
// replayed over enumerated scenarios. Policies with internal randomness must
// fix it at construction (by seed), never per offer.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;
  virtual void reset() = 0;
  virtual bool offer(std::size_t index, double value) = 0;
};

// Take the first included arrival with value >= tau (or > tau when strict).
// include == nullopt means every arrival is eligible. Single take.
struct ThresholdPolicy final : public OnlinePolicy {
  double tau = 0.0;
  bool strict = false;
  std::optional<std::vector<bool>> include;

  ThresholdPolicy() = default;
  explicit ThresholdPolicy(double t, bool strict_rule = false,
                           std::optional<std::vector<bool>> mask = std::nullopt)
      : tau(t), strict(strict_rule), include(std::move(mask)) {}

  void reset() override { taken_ = false; }
  bool offer(std::size_t index, double value) override {
    if (taken_) return false;
    if (include && (index >= include->size() || !(*include)[index])) return false;
    if (strict ? value > tau : value >= tau) {
      taken_ = true;
      return true;
    }
    return false;
  }

 private:
  bool taken_ = false;
};

struct PolicyRun {
  std::vector<std::pair<std::size_t, double>> takes;  // (arrival, value)
  double total = 0.0;
};

// Feeds every arrival to the policy; honors at most budget takes.
PolicyRun run_policy(OnlinePolicy& policy, std::span<const double> x, std::size_t budget);

}  // namespace lcp
