#pragma once

#include <functional>
#include <string>

#include "lcp/oracle.hpp"

namespace lcp {

// Nonnegative additive boost chosen online: may inspect the realized history
// x_1..x_{i-1} and the current base value z_i (hence also x_i). Returning a
// negative value is a contract violation and run_augmented throws.
using Adversary = std::function<double(std::span<const double> x_history, double z,
                                       std::size_t index)>;

// Arrival values X_i = Z_i + W_i with independent base values Z_i and
// adversarial boosts W_i >= 0. The benchmark is E[max Z].
struct AugmentedStream {
  std::vector<DiscreteDistribution> z_dists;
  Adversary adversary;
};

struct AugmentedRun {
  Estimate alg;       // E[policy value]
  Estimate max_z;     // E[max Z], same draws
  Estimate margin;    // E[policy value - max Z / 2], paired per trial
};

// Monte Carlo over num_samples trials; draws are stateless per (seed, trial).
AugmentedRun run_augmented(const AugmentedStream& stream, OnlinePolicy& policy,
                           std::size_t num_samples, std::uint64_t seed);

Adversary zero_adversary();
// W_1 = delta, all later boosts zero.
Adversary tiny_boost_first(double delta);
// Lifts every value below tau to the next double below tau: bait for strict
// rules, invisible to take-on->=.
Adversary lift_below_threshold(double tau);
// W_1 = max(0, tau - Z_1): the first arrival always meets the threshold.
Adversary lift_first_to_threshold(double tau);
// Adds boost to every arrival after some past value reached trigger.
Adversary history_triggered_boost(double trigger, double boost);

// The five shipped adversaries, parameterized by the policy threshold.
std::vector<std::pair<std::string, Adversary>> adversary_suite(double tau, double delta = 1e-6);

}  // namespace lcp
