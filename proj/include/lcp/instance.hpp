#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lcp/distribution.hpp"

namespace lcp {

struct MatrixEntry {
  std::size_t row = 0;  // arrival index
  std::size_t col = 0;  // feature index
  double coeff = 0.0;   // strictly positive
};

struct Realization {
  std::vector<double> y;  // feature draw, length m
  std::vector<double> x;  // arrival values A*y, length n
};

// Arrival values X = A*Y for a nonnegative sparse matrix A and independent
// finite-support features Y. Immutable after construction; row and column
// views are kept sorted so sums have one canonical order.
class LinearInstance {
 public:
  LinearInstance(std::size_t n, std::size_t m, std::vector<MatrixEntry> entries,
                 std::vector<DiscreteDistribution> features);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const std::vector<MatrixEntry>& entries() const { return entries_; }
  const std::vector<DiscreteDistribution>& features() const { return features_; }
  const DiscreteDistribution& feature(std::size_t j) const { return features_[j]; }

  // (col, coeff) pairs, ascending col.
  const std::vector<std::pair<std::size_t, double>>& row(std::size_t i) const { return rows_[i]; }
  // (row, coeff) pairs, ascending row.
  const std::vector<std::pair<std::size_t, double>>& col(std::size_t j) const { return cols_[j]; }

  // Canonical evaluation of x_i = sum_j A_ij y_j, ascending j.
  double row_value(std::size_t i, std::span<const double> y) const;
  std::vector<double> x_of(std::span<const double> y) const;

 private:
  std::size_t n_, m_;
  std::vector<MatrixEntry> entries_;
  std::vector<DiscreteDistribution> features_;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows_, cols_;
};

std::size_t row_sparsity(const LinearInstance& inst);  // max nonzeros in a row
std::size_t col_sparsity(const LinearInstance& inst);  // max nonzeros in a column

// Product of feature support sizes, saturating at cap + 1.
std::size_t joint_support_size(const LinearInstance& inst, std::size_t cap);

// Draws y (feature order, one inverse-CDF draw each) and evaluates x.
// Stateless: identical (seed, index) gives identical output.
Realization realize(const LinearInstance& inst, std::uint64_t seed, std::uint64_t index);

// Rescales every column to max coefficient 1 and scales feature values to
// compensate, preserving the distribution of x. Rejects empty columns.
LinearInstance normalize_columns(const LinearInstance& inst);

// Marginal law of each X_i (convolution of its scaled features). The
// marginals are only jointly independent when col_sparsity <= 1.
std::vector<DiscreteDistribution> arrival_distributions(const LinearInstance& inst,
                                                        std::size_t cap);

}  // namespace lcp
