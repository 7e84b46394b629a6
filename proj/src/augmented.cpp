#include "lcp/augmented.hpp"

#include <algorithm>
#include <cmath>

namespace lcp {

AugmentedRun run_augmented(const AugmentedStream& stream, OnlinePolicy& policy,
                           std::size_t num_samples, std::uint64_t seed) {
  if (num_samples == 0) throw std::invalid_argument("need at least one sample");
  if (!stream.adversary) throw std::invalid_argument("stream needs an adversary");
  const std::size_t n = stream.z_dists.size();
  RunningStats alg, maxz, margin;
  std::vector<double> x(n);
  for (std::size_t t = 0; t < num_samples; ++t) {
    auto rng = make_rng(derive_seed(seed, SeedTag::z_draw, t));
    policy.reset();
    double best_z = 0.0, value = 0.0;
    bool taken = false;
    for (std::size_t i = 0; i < n; ++i) {
      double z = stream.z_dists[i].sample(rng);
      double w = stream.adversary(std::span<const double>(x.data(), i), z, i);
      if (!(w >= 0.0))
        throw std::runtime_error("adversary returned a negative boost at arrival " +
                                 std::to_string(i));
      x[i] = z + w;
      best_z = std::max(best_z, z);
      if (!taken && policy.offer(i, x[i])) {
        taken = true;
        value = x[i];
      }
    }
    alg.add(value);
    maxz.add(best_z);
    margin.add(value - 0.5 * best_z);
  }
  return AugmentedRun{alg.estimate(), maxz.estimate(), margin.estimate()};
}

Adversary zero_adversary() {
  return [](std::span<const double>, double, std::size_t) { return 0.0; };
}

Adversary tiny_boost_first(double delta) {
  return [delta](std::span<const double>, double, std::size_t i) {
    return i == 0 ? delta : 0.0;
  };
}

Adversary lift_below_threshold(double tau) {
  const double just_below = std::nextafter(tau, 0.0);
  return [tau, just_below](std::span<const double>, double z, std::size_t) {
    return z < tau ? std::max(0.0, just_below - z) : 0.0;
  };
}

Adversary lift_first_to_threshold(double tau) {
  return [tau](std::span<const double>, double z, std::size_t i) {
    return i == 0 ? std::max(0.0, tau - z) : 0.0;
  };
}

Adversary history_triggered_boost(double trigger, double boost) {
  return [trigger, boost](std::span<const double> hist, double, std::size_t) {
    for (double h : hist)
      if (h >= trigger) return boost;
    return 0.0;
  };
}

std::vector<std::pair<std::string, Adversary>> adversary_suite(double tau, double delta) {
  return {
      {"zero", zero_adversary()},
      {"tiny-boost-first", tiny_boost_first(delta)},
      {"lift-below-threshold", lift_below_threshold(tau)},
      {"lift-first-to-threshold", lift_first_to_threshold(tau)},
      {"history-triggered", history_triggered_boost(tau, 0.5 * tau)},
  };
}

}  // namespace lcp
