#include "lcp/single_item.hpp"

#include <algorithm>
#include <cmath>

namespace lcp {

double half_expected_max_threshold(const std::vector<DiscreteDistribution>& z_dists) {
  return 0.5 * expected_max_independent(z_dists);
}

double median_of_max_threshold(const std::vector<DiscreteDistribution>& z_dists) {
  return median_of_max_independent(z_dists);
}

Json InclusionPlan::to_json() const {
  Json j;
  Json s = Json::array();
  for (std::size_t i = 0; i < include.size(); ++i)
    if (include[i]) s.push_back(i);
  j["include"] = std::move(s);
  Json assigned_json = Json::array();
  for (const auto& t : assigned) assigned_json.push_back(t);
  j["assigned"] = std::move(assigned_json);
  Json matched = Json::array();
  for (std::size_t f : matched_feature) matched.push_back(f == npos ? Json(nullptr) : Json(f));
  j["matched_feature"] = std::move(matched);
  j["tau"] = tau;
  j["max_z"] = estimate_to_json(max_z);
  return j;
}

std::vector<std::vector<std::size_t>> col_sparse_assignment(const LinearInstance& inst,
                                                            const std::vector<bool>& include) {
  if (include.size() != inst.n()) throw std::invalid_argument("inclusion mask size mismatch");
  std::vector<std::vector<std::size_t>> assigned(inst.n());
  for (std::size_t j = 0; j < inst.m(); ++j) {
    for (const auto& [i, a] : inst.col(j)) {  // rows ascending: first included wins
      if (include[i]) {
        assigned[i].push_back(j);
        break;
      }
    }
  }
  for (auto& t : assigned) std::sort(t.begin(), t.end());
  return assigned;
}

Estimate expected_max_of_disjoint_sums(const LinearInstance& inst,
                                       const std::vector<std::vector<std::size_t>>& assigned,
                                       const OracleConfig& cfg, std::uint64_t seed) {
  std::vector<double> coeff(inst.m(), 0.0);
  try {
    std::vector<DiscreteDistribution> z;
    for (std::size_t i = 0; i < inst.n(); ++i) {
      if (assigned[i].empty()) continue;
      for (const auto& [j, a] : inst.row(i)) coeff[j] = a;
      std::vector<DiscreteDistribution> parts;
      parts.reserve(assigned[i].size());
      for (std::size_t j : assigned[i])
        parts.push_back(scale_distribution(inst.feature(j), coeff[j]));
      z.push_back(convolve(parts, cfg.enumeration_cap));
      for (const auto& [j, a] : inst.row(i)) coeff[j] = 0.0;
    }
    if (z.empty()) return Estimate::exact_value(0.0);
    return Estimate::exact_value(expected_max_independent(z));
  } catch (const SupportTooLarge&) {
    RunningStats stats;
    std::vector<double> y(inst.m());
    for (std::size_t t = 0; t < cfg.mc_samples; ++t) {
      auto rng = make_rng(derive_seed(seed, SeedTag::estimate, t));
      for (std::size_t j = 0; j < inst.m(); ++j) y[j] = inst.feature(j).sample(rng);
      double best = 0.0;
      for (std::size_t i = 0; i < inst.n(); ++i) {
        if (assigned[i].empty()) continue;
        for (const auto& [j, a] : inst.row(i)) coeff[j] = a;
        double zi = 0.0;
        for (std::size_t j : assigned[i]) zi += coeff[j] * y[j];
        for (const auto& [j, a] : inst.row(i)) coeff[j] = 0.0;
        best = std::max(best, zi);
      }
      stats.add(best);
    }
    return stats.estimate();
  }
}

namespace {

std::vector<bool> mask_from(const std::vector<std::size_t>& members, std::size_t n) {
  std::vector<bool> mask(n, false);
  for (std::size_t i : members) mask[i] = true;
  return mask;
}

}  // namespace

SingleItemPolicy col_sparse_policy(const LinearInstance& inst, std::uint64_t seed,
                                   const OracleConfig& cfg) {
  std::size_t s = std::max<std::size_t>(1, col_sparsity(inst));
  auto rng = make_rng(derive_seed(seed, SeedTag::construction));
  std::vector<bool> include(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i)
    include[i] = uniform01(rng) < 1.0 / static_cast<double>(s);
  InclusionPlan plan;
  plan.include = include;
  plan.assigned = col_sparse_assignment(inst, include);
  plan.matched_feature.assign(inst.n(), npos);
  plan.max_z = expected_max_of_disjoint_sums(inst, plan.assigned, cfg, seed);
  plan.tau = 0.5 * plan.max_z.mean;
  SingleItemPolicy out{ThresholdPolicy(plan.tau, false, include), std::move(plan)};
  return out;
}

RepresentativeScheme::RepresentativeScheme(const LinearInstance& normalized)
    : n_(normalized.n()), m_(normalized.m()), s_row_(row_sparsity(normalized)) {
  primary_.assign(m_, npos);
  for (std::size_t j = 0; j < m_; ++j) {
    double colmax = 0.0;
    for (const auto& [i, a] : normalized.col(j)) {
      colmax = std::max(colmax, a);
      if (a == 1.0 && primary_[j] == npos) primary_[j] = i;  // rows ascending
    }
    if (colmax != 1.0 || primary_[j] == npos)
      throw std::invalid_argument("instance must be column-normalized with nonempty columns");
  }
  out_.assign(m_, {});
  for (std::size_t j = 0; j < m_; ++j)
    for (const auto& [j2, a] : normalized.row(primary_[j]))
      if (j2 != j) out_[j].push_back(j2);
  for (auto& adj : out_) std::sort(adj.begin(), adj.end());

  // Peel minimum-in-degree vertices (ties: lowest feature index) from the
  // back of the order; each peel sees in-degree at most s_row - 1.
  std::vector<std::size_t> indeg(m_, 0);
  for (std::size_t j = 0; j < m_; ++j)
    for (std::size_t j2 : out_[j]) ++indeg[j2];
  std::vector<bool> alive(m_, true);
  order_.assign(m_, npos);
  peel_indeg_.assign(m_, 0);
  for (std::size_t k = m_; k-- > 0;) {
    std::size_t pick = npos;
    for (std::size_t j = 0; j < m_; ++j)
      if (alive[j] && (pick == npos || indeg[j] < indeg[pick])) pick = j;
    order_[k] = pick;
    peel_indeg_[k] = indeg[pick];
    if (indeg[pick] > s_row_ - 1)
      throw std::runtime_error("peeling found in-degree above s_row - 1");
    alive[pick] = false;
    for (std::size_t j2 : out_[pick])
      if (alive[j2]) --indeg[j2];
  }
}

bool RepresentativeScheme::adjacent(std::size_t a, std::size_t b) const {
  return std::binary_search(out_[a].begin(), out_[a].end(), b) ||
         std::binary_search(out_[b].begin(), out_[b].end(), a);
}

RepresentativeConstruction RepresentativeScheme::sample(std::uint64_t seed) const {
  auto rng = make_rng(derive_seed(seed, SeedTag::construction));
  RepresentativeConstruction c;
  c.order = order_;
  c.primary_of_feature = primary_;
  c.feature_of_arrival.assign(n_, npos);
  for (std::size_t j : order_) {
    bool blocked = false;
    for (std::size_t t : c.features) {
      if (adjacent(j, t)) {
        blocked = true;
        break;
      }
    }
    if (blocked || !(uniform01(rng) < 1.0 / static_cast<double>(s_row_))) continue;
    c.features.push_back(j);
    std::size_t i = primary_[j];
    if (c.feature_of_arrival[i] != npos)
      throw std::runtime_error("two selected features share a primary arrival");
    c.feature_of_arrival[i] = j;
    c.arrivals.push_back(i);
  }
  std::sort(c.arrivals.begin(), c.arrivals.end());
  std::sort(c.features.begin(), c.features.end());
  return c;
}

RepresentativeConstruction representative_construction(const LinearInstance& normalized,
                                                       std::uint64_t seed) {
  return RepresentativeScheme(normalized).sample(seed);
}

SingleItemPolicy row_sparse_policy(const LinearInstance& inst, std::uint64_t seed,
                                   const OracleConfig& cfg) {
  (void)cfg;
  LinearInstance normalized = normalize_columns(inst);
  RepresentativeScheme scheme(normalized);
  RepresentativeConstruction c = scheme.sample(seed);
  InclusionPlan plan;
  plan.include = mask_from(c.arrivals, inst.n());
  plan.assigned.assign(inst.n(), {});
  plan.matched_feature = c.feature_of_arrival;
  std::vector<DiscreteDistribution> z;
  for (std::size_t i : c.arrivals) {
    plan.assigned[i] = {c.feature_of_arrival[i]};
    z.push_back(normalized.feature(c.feature_of_arrival[i]));  // matched coeff is exactly 1
  }
  plan.max_z = Estimate::exact_value(z.empty() ? 0.0 : expected_max_independent(z));
  plan.tau = 0.5 * plan.max_z.mean;
  return SingleItemPolicy{ThresholdPolicy(plan.tau, false, plan.include), std::move(plan)};
}

Json UnweightedThresholds::to_json() const {
  Json j;
  j["boundary_tau"] = boundary_tau;
  j["exceed_prob"] = exceed_prob;
  j["tail_mass"] = tail_mass;
  j["core_value"] = estimate_to_json(core_value);
  j["tau_tail"] = tau_tail;
  j["tau_core"] = tau_core;
  j["chosen_tau"] = chosen_tau;
  j["chosen"] = chosen;
  return j;
}

UnweightedPolicy unweighted_policy(const LinearInstance& inst, const OracleConfig& cfg,
                                   std::uint64_t seed) {
  for (const MatrixEntry& e : inst.entries())
    if (e.coeff != 1.0)
      throw std::invalid_argument("unweighted policy requires 0/1 coefficients");

  UnweightedThresholds th;
  // Boundary threshold: smallest support point where "no feature exceeds"
  // first reaches probability 1/2.
  std::vector<double> candidates;
  for (const auto& f : inst.features())
    for (const auto& a : f.atoms()) candidates.push_back(a.value);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  th.boundary_tau = candidates.back();
  for (double t : candidates) {
    double prod = 1.0;
    for (const auto& f : inst.features()) prod *= 1.0 - f.tail_prob(t);
    if (prod >= 0.5) {
      th.boundary_tau = t;
      break;
    }
  }
  th.exceed_prob.resize(inst.m());
  th.tail_mass = 0.0;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    th.exceed_prob[j] = inst.feature(j).tail_prob(th.boundary_tau);
    th.tail_mass += th.exceed_prob[j] * inst.feature(j).conditional_tail_mean(th.boundary_tau);
  }

  // V = E[max X | no feature exceeds the boundary].
  std::vector<DiscreteDistribution> truncated;
  truncated.reserve(inst.m());
  for (const auto& f : inst.features()) truncated.push_back(f.truncated_at_most(th.boundary_tau));
  LinearInstance conditioned(inst.n(), inst.m(), inst.entries(), std::move(truncated));
  try {
    th.core_value = exact_prophet_value(conditioned, 1, cfg);
  } catch (const SupportTooLarge&) {
    RunningStats stats;
    for (std::size_t t = 0; t < cfg.mc_samples; ++t) {
      Realization r = realize(conditioned, derive_seed(seed, SeedTag::estimate), t);
      stats.add(*std::max_element(r.x.begin(), r.x.end()));
    }
    th.core_value = stats.estimate();
  }

  // Tail threshold: half the expected max of fresh-feature sums, where each
  // feature counts only in its first carrying arrival.
  std::vector<std::vector<std::size_t>> fresh(inst.n());
  for (std::size_t j = 0; j < inst.m(); ++j)
    if (!inst.col(j).empty()) fresh[inst.col(j).front().first].push_back(j);
  Estimate tail_max = expected_max_of_disjoint_sums(inst, fresh, cfg, seed);
  th.tau_tail = 0.5 * tail_max.mean;
  th.tau_core = 0.5 * th.core_value.mean;

  double v = th.core_value.mean;
  if (th.tail_mass >= v) {
    th.chosen = "tail";
    th.chosen_tau = th.tau_tail;
  } else if (th.boundary_tau > v / 10.0) {
    th.chosen = "boundary";
    th.chosen_tau = th.boundary_tau;
  } else {
    th.chosen = "core";
    th.chosen_tau = th.tau_core;
  }
  return UnweightedPolicy{ThresholdPolicy(th.chosen_tau), std::move(th)};
}

NaPolicy na_threshold_policy(const JointSampler& sampler, std::size_t num_samples,
                             std::uint64_t seed) {
  if (num_samples == 0) throw std::invalid_argument("need at least one sample");
  RunningStats stats;
  std::vector<double> x;
  for (std::size_t t = 0; t < num_samples; ++t) {
    sampler.draw(seed, t, x);
    stats.add(*std::max_element(x.begin(), x.end()));
  }
  NaPolicy out;
  out.max_x = stats.estimate();
  out.policy = ThresholdPolicy(0.5 * out.max_x.mean);
  return out;
}

}  // namespace lcp
