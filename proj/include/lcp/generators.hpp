#pragma once

#include "lcp/instance.hpp"

namespace lcp {

// Random law for feature distributions and coefficients used by the
// instance generators. Defaults give two-atom features {0, v} with v in
// [value_min, value_max] and active probability in [prob_min, prob_max];
// atoms > 2 adds further uniformly drawn positive support points with a
// uniformly split probability budget.
struct FeatureSpec {
  std::size_t atoms = 2;
  double value_min = 0.5;
  double value_max = 10.0;
  double prob_min = 0.05;
  double prob_max = 0.6;

  DiscreteDistribution make_feature(std::mt19937_64& rng) const;
  double make_coefficient(std::mt19937_64& rng) const;  // uniform (0, 1]
};

// Two-band tower: Y_i = eps^-i w.p. eps^i, A has unit diagonal plus an eps
// superdiagonal. Row and column sparsity are both 2 for n >= 2.
LinearInstance gen_tower2(std::size_t n, double eps);

// Dense upper-triangular tower A_ij = eps^(j-i), n = m = c. Row and column
// sparsity both equal c.
LinearInstance gen_tower_general(std::size_t c, double eps);

// Random sparse instance with every row and column nonempty, realized
// sparsities <= the targets, coefficients and features from spec.
// Requires n <= m * target_s_col and m <= n * target_s_row.
LinearInstance gen_random_sparse(std::size_t n, std::size_t m, std::size_t target_s_row,
                                 std::size_t target_s_col, const FeatureSpec& spec,
                                 std::uint64_t seed);

// 0/1 instance: A_ij = 1 iff j is in sets[i].
LinearInstance gen_unweighted(std::size_t m, const std::vector<std::vector<std::size_t>>& sets,
                              std::vector<DiscreteDistribution> features);
LinearInstance gen_unweighted(std::size_t m, const std::vector<std::vector<std::size_t>>& sets,
                              const FeatureSpec& spec, std::uint64_t seed);

}  // namespace lcp
