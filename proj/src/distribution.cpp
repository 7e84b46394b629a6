#include "lcp/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace lcp {

namespace {
constexpr double kProbTolerance = 1e-12;
}

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("distribution needs at least one atom");
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  merged.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    if (!(a.value >= 0.0) || !std::isfinite(a.value))
      throw std::invalid_argument("atom values must be finite and nonnegative");
    if (!(a.prob > 0.0) || a.prob > 1.0)
      throw std::invalid_argument("atom probabilities must lie in (0,1]");
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
  }
  atoms_ = std::move(merged);
  double sum = 0.0;
  cum_.clear();
  cum_.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    sum += a.prob;
    cum_.push_back(sum);
  }
  if (std::fabs(sum - 1.0) > kProbTolerance)
    throw std::invalid_argument("atom probabilities must sum to 1 within 1e-12");
}

DiscreteDistribution DiscreteDistribution::constant(double value) {
  return DiscreteDistribution({{value, 1.0}});
}

DiscreteDistribution DiscreteDistribution::bernoulli_scaled(double value, double p) {
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("p must lie in (0,1]");
  if (p == 1.0 || value == 0.0) return constant(value);
  return DiscreteDistribution({{0.0, 1.0 - p}, {value, p}});
}

double DiscreteDistribution::expectation() const {
  double e = 0.0;
  for (const Atom& a : atoms_) e += a.value * a.prob;
  return e;
}

double DiscreteDistribution::cdf(double t) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t,
                             [](double v, const Atom& a) { return v < a.value; });
  if (it == atoms_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDistribution::tail_prob(double t) const { return 1.0 - cdf(t); }

double DiscreteDistribution::conditional_tail_mean(double t) const {
  double mass = 0.0, weighted = 0.0;
  for (const Atom& a : atoms_) {
    if (a.value > t) {
      mass += a.prob;
      weighted += a.prob * a.value;
    }
  }
  return mass > 0.0 ? weighted / mass : 0.0;
}

DiscreteDistribution DiscreteDistribution::truncated_at_most(double t) const {
  std::vector<Atom> kept;
  double mass = 0.0;
  for (const Atom& a : atoms_) {
    if (a.value <= t) {
      kept.push_back(a);
      mass += a.prob;
    }
  }
  if (kept.empty()) throw std::invalid_argument("truncation removes all mass");
  for (Atom& a : kept) a.prob /= mass;
  return DiscreteDistribution(std::move(kept));
}

double DiscreteDistribution::sample(std::mt19937_64& rng) const {
  double u = uniform01(rng);
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  if (it == cum_.end()) --it;  // guards the sum-within-tolerance edge
  return atoms_[static_cast<std::size_t>(it - cum_.begin())].value;
}

bool DiscreteDistribution::operator==(const DiscreteDistribution& o) const {
  if (atoms_.size() != o.atoms_.size()) return false;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k].value != o.atoms_[k].value || atoms_[k].prob != o.atoms_[k].prob) return false;
  }
  return true;
}

DiscreteDistribution scale_distribution(const DiscreteDistribution& d, double a) {
  if (!(a >= 0.0)) throw std::invalid_argument("scale must be nonnegative");
  std::vector<DiscreteDistribution::Atom> atoms = d.atoms();
  for (auto& atom : atoms) atom.value *= a;
  return DiscreteDistribution(std::move(atoms));
}

DiscreteDistribution convolve(const std::vector<DiscreteDistribution>& summands,
                              std::size_t cap) {
  if (summands.empty()) return DiscreteDistribution::constant(0.0);
  std::size_t combos = 1;
  for (const auto& d : summands) {
    if (combos > cap / d.size())
      throw SupportTooLarge("convolution support exceeds cap");
    combos *= d.size();
  }
  std::vector<DiscreteDistribution::Atom> acc = {{0.0, 1.0}};
  for (const auto& d : summands) {
    std::vector<DiscreteDistribution::Atom> next;
    next.reserve(acc.size() * d.size());
    for (const auto& a : acc)
      for (const auto& b : d.atoms())
        next.push_back({a.value + b.value, a.prob * b.prob});
    acc = std::move(next);
  }
  return DiscreteDistribution(std::move(acc));
}

}  // namespace lcp
