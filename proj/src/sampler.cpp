#include "lcp/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace lcp {

PermutationSampler::PermutationSampler(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("permutation sampler needs values");
  for (double v : values_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("values must be finite and nonnegative");
}

void PermutationSampler::draw(std::uint64_t seed, std::uint64_t index,
                              std::vector<double>& out) const {
  auto rng = make_rng(derive_seed(seed, SeedTag::values, index));
  out = values_;
  std::shuffle(out.begin(), out.end(), rng);
}

}  // namespace lcp
