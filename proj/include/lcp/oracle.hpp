#pragma once

#include <functional>

#include "lcp/instance.hpp"
#include "lcp/policy.hpp"
#include "lcp/sampler.hpp"

namespace lcp {

// Materialized joint support. Scenario order is the mixed-radix odometer over
// feature atoms (last feature fastest), so two instances with the same
// support shape enumerate in lockstep.
struct ScenarioTable {
  struct Scenario {
    std::vector<double> y, x;
    double prob = 0.0;
  };
  std::vector<Scenario> scenarios;
};

ScenarioTable enumerate_scenarios(const LinearInstance& inst, std::size_t cap);

// Streaming enumeration; fn(y, x, prob). Throws SupportTooLarge past cap.
void for_each_scenario(const LinearInstance& inst, std::size_t cap,
                       const std::function<void(std::span<const double>, std::span<const double>,
                                                double)>& fn);

// E[sum of top-r arrival values], by enumeration.
Estimate exact_prophet_value(const LinearInstance& inst, std::size_t r,
                             const OracleConfig& cfg = {});

// E[value collected by policy] with budget r, by enumeration. The policy is
// reset per scenario; it must be deterministic given its construction.
Estimate exact_policy_value(const LinearInstance& inst, OnlinePolicy& policy, std::size_t r,
                            const OracleConfig& cfg = {});

// Value of the optimal observation-adapted stopping rule with budget r, by
// backward induction over the scenario tree (scenarios grouped by exact
// equality of observed prefixes; ties between stop and continue stop).
Estimate exact_online_optimum(const LinearInstance& inst, std::size_t r,
                              const OracleConfig& cfg = {});

// Exact value of every fixed threshold drawn from the achievable arrival
// values (single take, take on >=); taus ascending.
struct ThresholdResponse {
  std::vector<double> taus;
  std::vector<double> values;
};
ThresholdResponse threshold_response(const LinearInstance& inst, const OracleConfig& cfg = {});

// Maximizing fixed threshold (largest tau among ties) and its exact value.
struct BestThreshold {
  double tau = 0.0;
  Estimate value;
};
BestThreshold best_fixed_threshold(const LinearInstance& inst, const OracleConfig& cfg = {});

// Monte Carlo estimate of E[policy value] under the sampler's joint law.
Estimate mc_value(const JointSampler& sampler, OnlinePolicy& policy, std::size_t r,
                  std::size_t num_samples, std::uint64_t seed);

// Independent desk-scale oracle for exact_online_optimum with r = 1:
// exhaustively evaluates every deterministic stopping rule keyed by the
// observed prefix. Throws if more than policy_cap rules exist.
double brute_force_online_optimum(const LinearInstance& inst, const OracleConfig& cfg = {},
                                  std::uint64_t policy_cap = 5'000'000);

// Exact E[max_i Z_i] and the smallest support point t with Pr[max <= t] >= 1/2,
// for independent coordinates. Product-form: never needs the joint support.
double expected_max_independent(const std::vector<DiscreteDistribution>& dists);
double median_of_max_independent(const std::vector<DiscreteDistribution>& dists);

// E[sum of top-r coordinates] for independent coordinates: enumeration under
// the cap, Monte Carlo with num_samples draws otherwise.
Estimate expected_top_r_independent(const std::vector<DiscreteDistribution>& dists, std::size_t r,
                                    std::size_t num_samples, std::uint64_t seed,
                                    const OracleConfig& cfg = {});

}  // namespace lcp
