#include "lcp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lcp {

LinearInstance::LinearInstance(std::size_t n, std::size_t m, std::vector<MatrixEntry> entries,
                               std::vector<DiscreteDistribution> features)
    : n_(n), m_(m), entries_(std::move(entries)), features_(std::move(features)) {
  if (n_ == 0) throw std::invalid_argument("need at least one arrival");
  if (features_.size() != m_) throw std::invalid_argument("feature count must equal m");
  std::sort(entries_.begin(), entries_.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  rows_.assign(n_, {});
  cols_.assign(m_, {});
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const MatrixEntry& e = entries_[k];
    if (e.row >= n_ || e.col >= m_) throw std::invalid_argument("entry index out of range");
    if (!(e.coeff > 0.0) || !std::isfinite(e.coeff))
      throw std::invalid_argument("coefficients must be finite and positive");
    if (k > 0 && entries_[k - 1].row == e.row && entries_[k - 1].col == e.col)
      throw std::invalid_argument("duplicate matrix entry");
    rows_[e.row].emplace_back(e.col, e.coeff);
    cols_[e.col].emplace_back(e.row, e.coeff);
  }
}

double LinearInstance::row_value(std::size_t i, std::span<const double> y) const {
  double s = 0.0;
  for (const auto& [j, a] : rows_[i]) s += a * y[j];
  return s;
}

std::vector<double> LinearInstance::x_of(std::span<const double> y) const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = row_value(i, y);
  return x;
}

std::size_t row_sparsity(const LinearInstance& inst) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < inst.n(); ++i) s = std::max(s, inst.row(i).size());
  return s;
}

std::size_t col_sparsity(const LinearInstance& inst) {
  std::size_t s = 0;
  for (std::size_t j = 0; j < inst.m(); ++j) s = std::max(s, inst.col(j).size());
  return s;
}

std::size_t joint_support_size(const LinearInstance& inst, std::size_t cap) {
  std::size_t prod = 1;
  for (const auto& f : inst.features()) {
    if (prod > cap / f.size()) return cap + 1;
    prod *= f.size();
  }
  return prod;
}

Realization realize(const LinearInstance& inst, std::uint64_t seed, std::uint64_t index) {
  auto rng = make_rng(derive_seed(seed, SeedTag::values, index));
  Realization r;
  r.y.resize(inst.m());
  for (std::size_t j = 0; j < inst.m(); ++j) r.y[j] = inst.feature(j).sample(rng);
  r.x = inst.x_of(r.y);
  return r;
}

LinearInstance normalize_columns(const LinearInstance& inst) {
  std::vector<double> colmax(inst.m(), 0.0);
  for (std::size_t j = 0; j < inst.m(); ++j) {
    for (const auto& [i, a] : inst.col(j)) colmax[j] = std::max(colmax[j], a);
    if (colmax[j] == 0.0)
      throw std::invalid_argument("column " + std::to_string(j) +
                                  " has no entries; drop it before normalizing");
  }
  std::vector<MatrixEntry> entries = inst.entries();
  for (MatrixEntry& e : entries) e.coeff /= colmax[e.col];
  std::vector<DiscreteDistribution> features;
  features.reserve(inst.m());
  for (std::size_t j = 0; j < inst.m(); ++j)
    features.push_back(scale_distribution(inst.feature(j), colmax[j]));
  return LinearInstance(inst.n(), inst.m(), std::move(entries), std::move(features));
}

std::vector<DiscreteDistribution> arrival_distributions(const LinearInstance& inst,
                                                        std::size_t cap) {
  std::vector<DiscreteDistribution> out;
  out.reserve(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (inst.row(i).empty()) {
      out.push_back(DiscreteDistribution::constant(0.0));
      continue;
    }
    std::vector<DiscreteDistribution> parts;
    parts.reserve(inst.row(i).size());
    for (const auto& [j, a] : inst.row(i)) parts.push_back(scale_distribution(inst.feature(j), a));
    out.push_back(convolve(parts, cap));
  }
  return out;
}

}  // namespace lcp
