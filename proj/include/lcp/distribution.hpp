#pragma once

#include <random>
#include <vector>

#include "lcp/common.hpp"

namespace lcp {

// Finite-support distribution over nonnegative reals. Atoms are stored with
// distinct values sorted ascending; probabilities lie in (0,1] and sum to 1
// within 1e-12. Equal-valued atoms passed to the constructor are merged.
class DiscreteDistribution {
 public:
  struct Atom {
    double value = 0.0;
    double prob = 0.0;
  };

  explicit DiscreteDistribution(std::vector<Atom> atoms);

  static DiscreteDistribution constant(double value);
  // {0 w.p. 1-p, value w.p. p}; p == 1 collapses to a point mass.
  static DiscreteDistribution bernoulli_scaled(double value, double p);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min_value() const { return atoms_.front().value; }
  double max_value() const { return atoms_.back().value; }

  double expectation() const;
  double cdf(double t) const;        // Pr[Y <= t]
  double tail_prob(double t) const;  // Pr[Y > t]
  // E[Y | Y > t]; returns 0 when Pr[Y > t] == 0.
  double conditional_tail_mean(double t) const;
  // Conditioned on Y <= t, renormalized. Requires Pr[Y <= t] > 0.
  DiscreteDistribution truncated_at_most(double t) const;

  // Inverse-CDF draw; deterministic given the generator state.
  double sample(std::mt19937_64& rng) const;

  bool operator==(const DiscreteDistribution& o) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cum_;  // cumulative probabilities, same length as atoms_
};

// Atom values scaled by a >= 0 (probabilities unchanged).
DiscreteDistribution scale_distribution(const DiscreteDistribution& d, double a);

// Law of the sum of independent summands. Enumerates the product support;
// throws SupportTooLarge past cap.
DiscreteDistribution convolve(const std::vector<DiscreteDistribution>& summands,
                              std::size_t cap);

}  // namespace lcp
