#pragma once

#include <memory>

#include "lcp/instance.hpp"

namespace lcp {

// Joint law of an arrival-value vector. draw(seed, index) is stateless and
// identical across runs and thread schedules.
class JointSampler {
 public:
  virtual ~JointSampler() = default;
  virtual std::size_t dimension() const = 0;
  virtual void draw(std::uint64_t seed, std::uint64_t index, std::vector<double>& out) const = 0;

  std::vector<double> draw(std::uint64_t seed, std::uint64_t index) const {
    std::vector<double> out;
    draw(seed, index, out);
    return out;
  }
};

// x = A*y with y drawn featurewise; shares the realize() seed path.
class InstanceSampler final : public JointSampler {
 public:
  explicit InstanceSampler(LinearInstance inst) : inst_(std::move(inst)) {}
  std::size_t dimension() const override { return inst_.n(); }
  void draw(std::uint64_t seed, std::uint64_t index, std::vector<double>& out) const override {
    out = realize(inst_, seed, index).x;
  }
  const LinearInstance& instance() const { return inst_; }

 private:
  LinearInstance inst_;
};

// Uniform random permutation of a fixed value multiset; the coordinates are
// negatively associated. max over coordinates is the multiset max, always.
class PermutationSampler final : public JointSampler {
 public:
  explicit PermutationSampler(std::vector<double> values);
  std::size_t dimension() const override { return values_.size(); }
  void draw(std::uint64_t seed, std::uint64_t index, std::vector<double>& out) const override;
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

inline PermutationSampler gen_na_permutation(std::vector<double> values) {
  return PermutationSampler(std::move(values));
}

}  // namespace lcp
