#include "lcp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace lcp {

DiscreteDistribution FeatureSpec::make_feature(std::mt19937_64& rng) const {
  if (atoms < 2) throw std::invalid_argument("feature spec needs at least 2 atoms");
  double active = prob_min + (prob_max - prob_min) * uniform01(rng);
  std::size_t positive = atoms - 1;
  std::set<double> values;
  while (values.size() < positive)
    values.insert(value_min + (value_max - value_min) * uniform01(rng));
  std::vector<double> weights(positive);
  double total = 0.0;
  for (double& w : weights) total += (w = 0.05 + uniform01(rng));
  std::vector<DiscreteDistribution::Atom> out = {{0.0, 1.0 - active}};
  std::size_t k = 0;
  for (double v : values) out.push_back({v, active * weights[k++] / total});
  return DiscreteDistribution(std::move(out));
}

double FeatureSpec::make_coefficient(std::mt19937_64& rng) const {
  return 1.0 - uniform01(rng);  // (0, 1]
}

namespace {
void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 0.5)");
}

// A coefficient c within a few ulp of target / y with c * y == target exactly,
// if one exists.
std::optional<double> coeff_hitting(double target, double y) {
  double c = target / y;
  if (c * y == target) return c;
  double lo = c, hi = c;
  for (int k = 0; k < 4; ++k) {
    lo = std::nextafter(lo, 0.0);
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    if (lo * y == target) return lo;
    if (hi * y == target) return hi;
  }
  return std::nullopt;
}

// Tower levels V_j ~ eps^-(j+1), nudged within a few ulp so that every
// off-diagonal product A_ij * V_j lands bit-exactly on V_i. The towers hide
// which level is active behind value equality, and the stopping oracle groups
// scenarios by exact equality; with naive rounding the products differ in the
// last ulp and the ambiguity (hence the hardness) silently evaporates.
// `full` asks for all pairs i < j, not just the superdiagonal.
std::vector<double> exact_tower_levels(std::size_t c, double eps, bool full) {
  std::vector<double> levels;
  levels.reserve(c);
  for (std::size_t j = 0; j < c; ++j) {
    double ideal = std::pow(eps, -static_cast<double>(j + 1));
    double lo = ideal, hi = ideal, picked = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < 129 && std::isnan(picked); ++k) {
      double y = ideal;
      if (k > 0) {
        if (k % 2) {
          hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
          y = hi;
        } else {
          lo = std::nextafter(lo, 0.0);
          y = lo;
        }
      }
      bool ok = true;
      std::size_t first = full || j == 0 ? 0 : j - 1;
      for (std::size_t i = first; i < j && ok; ++i) ok = coeff_hitting(levels[i], y).has_value();
      if (ok) picked = y;
    }
    if (std::isnan(picked))
      throw std::runtime_error("no representable tower level at index " + std::to_string(j));
    levels.push_back(picked);
  }
  return levels;
}

std::vector<DiscreteDistribution> tower_features(const std::vector<double>& levels, double eps) {
  std::vector<DiscreteDistribution> f;
  f.reserve(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j)
    f.push_back(DiscreteDistribution::bernoulli_scaled(
        levels[j], std::pow(eps, static_cast<double>(j + 1))));
  return f;
}
}  // namespace

LinearInstance gen_tower2(std::size_t n, double eps) {
  check_eps(eps);
  if (n == 0) throw std::invalid_argument("n must be positive");
  const auto levels = exact_tower_levels(n, eps, /*full=*/false);
  std::vector<MatrixEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back({i, i, 1.0});
    if (i + 1 < n) entries.push_back({i, i + 1, *coeff_hitting(levels[i], levels[i + 1])});
  }
  return LinearInstance(n, n, std::move(entries), tower_features(levels, eps));
}

LinearInstance gen_tower_general(std::size_t c, double eps) {
  check_eps(eps);
  if (c == 0) throw std::invalid_argument("c must be positive");
  const auto levels = exact_tower_levels(c, eps, /*full=*/true);
  std::vector<MatrixEntry> entries;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i; j < c; ++j)
      entries.push_back({i, j, i == j ? 1.0 : *coeff_hitting(levels[i], levels[j])});
  return LinearInstance(c, c, std::move(entries), tower_features(levels, eps));
}

LinearInstance gen_random_sparse(std::size_t n, std::size_t m, std::size_t target_s_row,
                                 std::size_t target_s_col, const FeatureSpec& spec,
                                 std::uint64_t seed) {
  if (n == 0 || m == 0) throw std::invalid_argument("n and m must be positive");
  if (target_s_row == 0 || target_s_col == 0)
    throw std::invalid_argument("sparsity targets must be positive");
  if (m > n * target_s_row || n > m * target_s_col)
    throw std::invalid_argument("infeasible sparsity targets for requested shape");

  auto rng = make_rng(seed);
  std::vector<std::size_t> row_count(n, 0), col_count(m, 0);
  std::set<std::pair<std::size_t, std::size_t>> present;
  std::vector<MatrixEntry> entries;
  auto add = [&](std::size_t i, std::size_t j) {
    present.insert({i, j});
    ++row_count[i];
    ++col_count[j];
    entries.push_back({i, j, spec.make_coefficient(rng)});
  };

  // Cover min(n, m) rows and columns with a random partial matching, then
  // place the leftover side respecting the opposite capacity.
  std::vector<std::size_t> rows(n), cols(m);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng);
  std::shuffle(cols.begin(), cols.end(), rng);
  for (std::size_t k = 0; k < std::min(n, m); ++k) add(rows[k], cols[k]);
  for (std::size_t k = std::min(n, m); k < m; ++k) {  // leftover features
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n; ++i)
      if (row_count[i] < target_s_row) open.push_back(i);
    add(open[uniform_below(rng, open.size())], cols[k]);
  }
  for (std::size_t k = std::min(n, m); k < n; ++k) {  // leftover arrivals
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < m; ++j)
      if (col_count[j] < target_s_col) open.push_back(j);
    add(rows[k], open[uniform_below(rng, open.size())]);
  }

  // Sprinkle extra entries where both capacities leave room.
  for (std::size_t attempt = 0; attempt < n + m; ++attempt) {
    std::size_t i = uniform_below(rng, n), j = uniform_below(rng, m);
    if (row_count[i] < target_s_row && col_count[j] < target_s_col && !present.count({i, j}))
      add(i, j);
  }

  std::vector<DiscreteDistribution> features;
  features.reserve(m);
  for (std::size_t j = 0; j < m; ++j) features.push_back(spec.make_feature(rng));
  return LinearInstance(n, m, std::move(entries), std::move(features));
}

LinearInstance gen_unweighted(std::size_t m, const std::vector<std::vector<std::size_t>>& sets,
                              std::vector<DiscreteDistribution> features) {
  std::vector<MatrixEntry> entries;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::set<std::size_t> seen;
    for (std::size_t j : sets[i]) {
      if (j >= m) throw std::invalid_argument("set element out of feature range");
      if (!seen.insert(j).second) throw std::invalid_argument("duplicate feature in set");
      entries.push_back({i, j, 1.0});
    }
  }
  return LinearInstance(sets.size(), m, std::move(entries), std::move(features));
}

LinearInstance gen_unweighted(std::size_t m, const std::vector<std::vector<std::size_t>>& sets,
                              const FeatureSpec& spec, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::vector<DiscreteDistribution> features;
  features.reserve(m);
  for (std::size_t j = 0; j < m; ++j) features.push_back(spec.make_feature(rng));
  return gen_unweighted(m, sets, std::move(features));
}

}  // namespace lcp
