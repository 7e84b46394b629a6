#include "lcp/multi_item.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lcp {

namespace {

// Bucket of a base value: highest (lowest-index) bucket whose threshold it
// meets; boundary atoms resolve upward.
std::size_t bucket_of_value(const std::vector<double>& tau, double z) {
  return static_cast<std::size_t>(
      std::lower_bound(tau.begin(), tau.end(), z, std::greater<double>()) - tau.begin());
}

// Indices of the r largest entries, ties to the lower index.
void top_r_indices(const std::vector<double>& z, std::size_t r, std::vector<std::size_t>& idx) {
  idx.resize(z.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (r < idx.size()) {
    std::nth_element(idx.begin(), idx.begin() + (r - 1), idx.end(),
                     [&](std::size_t a, std::size_t b) {
                       return z[a] != z[b] ? z[a] > z[b] : a < b;
                     });
    idx.resize(r);
  }
}

}  // namespace

Json BucketConfig::to_json() const {
  Json j;
  j["eps"] = eps;
  j["r"] = r;
  j["c"] = c;
  j["beta"] = beta;
  j["opt"] = estimate_to_json(opt);
  j["tau"] = tau;
  Json mass = Json::array();
  for (const auto& e : bucket_mass) mass.push_back(estimate_to_json(e));
  j["bucket_mass"] = std::move(mass);
  j["capacity"] = capacity;
  j["eps_guarantee_bound"] = eps_guarantee_bound;
  j["guarantee_applies"] = guarantee_applies;
  return j;
}

BucketConfig compute_bucket_config(const std::vector<DiscreteDistribution>& z_dists,
                                   std::size_t r, double eps, std::uint64_t seed,
                                   const OracleConfig& cfg) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  if (!(eps > 0.0) || eps > 0.5) throw std::invalid_argument("eps must lie in (0, 1/2]");
  if (z_dists.empty()) throw std::invalid_argument("need at least one base distribution");

  BucketConfig out;
  out.eps = eps;
  out.r = r;
  out.opt = expected_top_r_independent(z_dists, r, cfg.mc_samples,
                                       derive_seed(seed, SeedTag::estimate, 0), cfg);
  double rd = static_cast<double>(r);
  out.c = static_cast<std::size_t>(std::ceil(std::log(rd / (eps * eps)) / eps));
  out.beta = 3.0 * std::sqrt(rd * std::log(static_cast<double>(out.c) / eps));

  out.tau.resize(out.c + 1);
  out.tau[0] = out.opt.mean / eps;
  for (std::size_t j = 1; j <= out.c; ++j) out.tau[j] = (1.0 - eps) * out.tau[j - 1];

  // bucket_mass[j] = E[#top-r base values landing in [tau_j, tau_{j-1}]].
  out.bucket_mass.assign(out.c + 1, Estimate{});
  std::size_t combos = 1;
  bool exact = true;
  for (const auto& d : z_dists) {
    if (combos > cfg.enumeration_cap / d.size()) {
      exact = false;
      break;
    }
    combos *= d.size();
  }
  std::vector<double> z(z_dists.size());
  std::vector<std::size_t> idx, count(out.c + 1, 0);
  auto tally = [&]() {
    std::fill(count.begin(), count.end(), 0);
    top_r_indices(z, r, idx);
    for (std::size_t i : idx) {
      if (z[i] < out.tau[out.c]) continue;
      std::size_t j = bucket_of_value(out.tau, z[i]);
      if (j >= 1) ++count[j];
    }
  };
  if (exact) {
    std::vector<std::size_t> digit(z_dists.size(), 0);
    std::vector<double> sums(out.c + 1, 0.0);
    std::uint64_t scenarios = 0;
    for (;;) {
      double p = 1.0;
      for (std::size_t k = 0; k < z_dists.size(); ++k) {
        z[k] = z_dists[k].atoms()[digit[k]].value;
        p *= z_dists[k].atoms()[digit[k]].prob;
      }
      tally();
      for (std::size_t j = 1; j <= out.c; ++j) sums[j] += p * static_cast<double>(count[j]);
      ++scenarios;
      std::size_t k = z_dists.size();
      bool done = true;
      while (k-- > 0) {
        if (digit[k] + 1 < z_dists[k].size()) {
          ++digit[k];
          std::fill(digit.begin() + static_cast<std::ptrdiff_t>(k) + 1, digit.end(), 0);
          done = false;
          break;
        }
      }
      if (done) break;
    }
    for (std::size_t j = 1; j <= out.c; ++j)
      out.bucket_mass[j] = Estimate::exact_value(sums[j], scenarios);
  } else {
    std::vector<RunningStats> stats(out.c + 1);
    std::uint64_t mass_seed = derive_seed(seed, SeedTag::estimate, 1);
    for (std::size_t t = 0; t < cfg.mc_samples; ++t) {
      auto rng = make_rng(derive_seed(mass_seed, SeedTag::trial, t));
      for (std::size_t k = 0; k < z_dists.size(); ++k) z[k] = z_dists[k].sample(rng);
      tally();
      for (std::size_t j = 1; j <= out.c; ++j) stats[j].add(static_cast<double>(count[j]));
    }
    for (std::size_t j = 1; j <= out.c; ++j) out.bucket_mass[j] = stats[j].estimate();
  }

  out.capacity.resize(out.c + 1);
  out.capacity[0] = 1.0;
  for (std::size_t j = 1; j <= out.c; ++j) out.capacity[j] = out.bucket_mass[j].mean + out.beta;

  out.eps_guarantee_bound = 9.0 * std::pow(std::log(rd), 1.5) / std::pow(rd, 0.25);
  out.guarantee_applies = eps >= out.eps_guarantee_bound;
  return out;
}

Json SelectionTranscript::to_json() const {
  Json j;
  j["budget"] = budget;
  Json tk = Json::array();
  for (const TakeEvent& e : takes) {
    Json ej;
    ej["arrival"] = e.arrival;
    ej["value"] = e.value;
    ej["bucket"] = e.bucket;
    ej["group"] = e.group;
    ej["kept"] = e.kept;
    tk.push_back(std::move(ej));
  }
  j["takes"] = std::move(tk);
  j["fills"] = fills;
  j["below_threshold"] = below_threshold;
  j["overflow"] = overflow;
  j["thinned"] = thinned;
  j["over_budget"] = over_budget;
  j["pile"] = pile;
  j["kept_count"] = kept_count;
  j["kept_value"] = kept_value;
  return j;
}

BucketPolicy::BucketPolicy(const BucketConfig& config, std::uint64_t coin_seed)
    : config_(&config), coin_(make_rng(coin_seed)) {
  t_.budget = config.r;
  t_.fills.assign(config.c + 1, 0);
}

bool BucketPolicy::offer(std::size_t arrival, double x) {
  const std::vector<double>& tau = config_->tau;
  if (x < tau[config_->c]) {
    ++t_.below_threshold;
    return false;
  }
  std::size_t j = bucket_of_value(tau, x);
  // Trickle down: capacity[j] bounds the fill after the take, so a bucket
  // holds at most floor(capacity) values.
  while (j < t_.fills.size() && static_cast<double>(t_.fills[j]) + 1.0 > config_->capacity[j])
    ++j;
  if (j >= t_.fills.size()) {
    ++t_.overflow;
    return false;
  }
  ++t_.fills[j];
  TakeEvent ev{arrival, x, j, 0, true};
  if (uniform01(coin_) < config_->eps) {
    ev.kept = false;
    ++t_.thinned;
  } else if (t_.kept_count == t_.budget) {
    ev.kept = false;
    ++t_.over_budget;
  } else {
    ++t_.kept_count;
    t_.kept_value += x;
  }
  t_.takes.push_back(ev);
  return ev.kept;
}

SelectionTranscript run_bucket_policy(const BucketConfig& config, std::span<const double> x,
                                      std::uint64_t coin_seed) {
  BucketPolicy policy(config, coin_seed);
  for (std::size_t i = 0; i < x.size(); ++i) policy.offer(i, x[i]);
  return policy.transcript();
}

SelectionTranscript run_bucket_algorithm(const BucketConfig& config,
                                         const AugmentedStream& stream, std::uint64_t seed) {
  auto rng = make_rng(derive_seed(seed, SeedTag::z_draw));
  std::vector<double> x;
  x.reserve(stream.z_dists.size());
  for (std::size_t i = 0; i < stream.z_dists.size(); ++i) {
    double z = stream.z_dists[i].sample(rng);
    double w = stream.adversary ? stream.adversary(x, z, i) : 0.0;
    if (w < 0.0) throw std::runtime_error("adversary returned a negative boost");
    x.push_back(z + w);
  }
  return run_bucket_policy(config, x, derive_seed(seed, SeedTag::discard));
}

Json GroupPartition::to_json() const {
  Json j;
  j["eps_prime"] = eps_prime;
  j["groups"] = groups;
  j["group_budget"] = group_budget;
  j["assignment"] = assignment;
  return j;
}

GroupPartition draw_group_partition(std::size_t n, std::size_t s_col, std::size_t r,
                                    double eps_prime, std::uint64_t seed) {
  if (s_col == 0) throw std::invalid_argument("column sparsity must be positive");
  if (!(eps_prime > 0.0) || eps_prime > 1.0)
    throw std::invalid_argument("eps_prime must lie in (0, 1]");
  GroupPartition p;
  p.eps_prime = eps_prime;
  p.groups = static_cast<std::size_t>(std::ceil(static_cast<double>(s_col) / eps_prime));
  p.group_budget = static_cast<std::size_t>(
      std::floor(eps_prime * static_cast<double>(r) / static_cast<double>(s_col)));
  if (p.group_budget == 0)
    throw std::invalid_argument(
        "per-group budget floors to zero; need eps_prime * r >= s_col (raise r or eps_prime)");
  auto rng = make_rng(derive_seed(seed, SeedTag::partition));
  p.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.assignment[i] = uniform_below(rng, p.groups);
  return p;
}

std::vector<std::vector<std::size_t>> group_unique_features(const LinearInstance& inst,
                                                            const GroupPartition& partition,
                                                            std::size_t gid) {
  std::vector<std::vector<std::size_t>> unique(inst.n());
  for (std::size_t j = 0; j < inst.m(); ++j) {
    std::size_t carrier = npos;
    std::size_t count = 0;
    for (const auto& [i, a] : inst.col(j)) {
      if (partition.assignment[i] == gid) {
        carrier = i;
        ++count;
      }
    }
    if (count == 1) unique[carrier].push_back(j);
  }
  return unique;
}

Json MultiItemRun::to_json() const {
  Json j;
  j["merged"] = merged.to_json();
  j["partition"] = partition.to_json();
  Json configs = Json::array();
  for (const auto& c : group_configs) configs.push_back(c.to_json());
  j["group_configs"] = std::move(configs);
  Json groups = Json::array();
  for (const auto& t : per_group) groups.push_back(t.to_json());
  j["per_group"] = std::move(groups);
  return j;
}

MultiItemRun col_sparse_multi(const LinearInstance& inst, std::size_t r, double eps_prime,
                              double bucket_eps, std::uint64_t seed, const OracleConfig& cfg) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  std::size_t s_col = std::max<std::size_t>(1, col_sparsity(inst));
  MultiItemRun run;
  run.partition = draw_group_partition(inst.n(), s_col, r, eps_prime, seed);
  const std::size_t g = run.partition.groups;

  std::vector<std::vector<std::size_t>> members(g);
  for (std::size_t i = 0; i < inst.n(); ++i)
    members[run.partition.assignment[i]].push_back(i);

  std::vector<double> coeff(inst.m(), 0.0);
  run.group_configs.reserve(g);
  for (std::size_t gid = 0; gid < g; ++gid) {
    auto unique = group_unique_features(inst, run.partition, gid);
    std::vector<DiscreteDistribution> z_dists;
    z_dists.reserve(members[gid].size());
    for (std::size_t i : members[gid]) {
      if (unique[i].empty()) {
        z_dists.push_back(DiscreteDistribution::constant(0.0));
        continue;
      }
      for (const auto& [j, a] : inst.row(i)) coeff[j] = a;
      std::vector<DiscreteDistribution> parts;
      parts.reserve(unique[i].size());
      for (std::size_t j : unique[i])
        parts.push_back(scale_distribution(inst.feature(j), coeff[j]));
      for (const auto& [j, a] : inst.row(i)) coeff[j] = 0.0;
      z_dists.push_back(convolve(parts, cfg.enumeration_cap));
    }
    if (z_dists.empty()) z_dists.push_back(DiscreteDistribution::constant(0.0));
    run.group_configs.push_back(compute_bucket_config(z_dists, run.partition.group_budget,
                                                      bucket_eps,
                                                      derive_seed(seed, SeedTag::config, gid),
                                                      cfg));
  }

  std::vector<BucketPolicy> policies;
  policies.reserve(g);
  for (std::size_t gid = 0; gid < g; ++gid)
    policies.emplace_back(run.group_configs[gid], derive_seed(seed, SeedTag::discard, gid));

  Realization real = realize(inst, seed, 0);
  run.merged.budget = r;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t gid = run.partition.assignment[i];
    BucketPolicy& pol = policies[gid];
    std::size_t before = pol.transcript().takes.size();
    pol.offer(i, real.x[i]);
    if (pol.transcript().takes.size() == before) continue;
    TakeEvent ev = pol.transcript().takes.back();
    ev.group = gid;
    if (ev.kept && run.merged.kept_count == r) {
      ev.kept = false;  // group budgets can round past r; the global cap wins
      ++run.merged.over_budget;
    } else if (ev.kept) {
      ++run.merged.kept_count;
      run.merged.kept_value += ev.value;
    }
    run.merged.takes.push_back(ev);
  }
  for (std::size_t gid = 0; gid < g; ++gid) {
    const SelectionTranscript& t = policies[gid].transcript();
    run.merged.below_threshold += t.below_threshold;
    run.merged.overflow += t.overflow;
    run.merged.thinned += t.thinned;
    run.merged.over_budget += t.over_budget;
    if (t.fills.size() > run.merged.fills.size()) run.merged.fills.resize(t.fills.size(), 0);
    for (std::size_t j = 0; j < t.fills.size(); ++j) run.merged.fills[j] += t.fills[j];
    run.per_group.push_back(t);
  }
  return run;
}

Json RowSparseMultiRun::to_json() const {
  Json j;
  j["transcript"] = transcript.to_json();
  j["bucket_of"] = bucket_of;
  Json plans = Json::array();
  for (const auto& p : bucket_plans) plans.push_back(p.to_json());
  j["bucket_plans"] = std::move(plans);
  return j;
}

RowSparseMultiRun row_sparse_multi(const LinearInstance& inst, std::size_t r,
                                   std::uint64_t seed, const OracleConfig& cfg) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  RowSparseMultiRun run;
  auto rng = make_rng(derive_seed(seed, SeedTag::partition));
  run.bucket_of.resize(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) run.bucket_of[i] = uniform_below(rng, r);

  std::vector<std::vector<std::size_t>> members(r);
  for (std::size_t i = 0; i < inst.n(); ++i) members[run.bucket_of[i]].push_back(i);

  // Per-bucket sub-instance: the bucket's rows with the features they touch,
  // indices compacted.
  std::vector<std::optional<ThresholdPolicy>> policies(r);
  run.bucket_plans.resize(r);
  std::vector<std::size_t> local_row(inst.n(), npos);
  for (std::size_t b = 0; b < r; ++b) {
    if (members[b].empty()) continue;
    std::vector<std::size_t> feats;
    for (std::size_t i : members[b])
      for (const auto& [j, a] : inst.row(i)) feats.push_back(j);
    std::sort(feats.begin(), feats.end());
    feats.erase(std::unique(feats.begin(), feats.end()), feats.end());
    std::vector<std::size_t> local_col(inst.m(), npos);
    for (std::size_t k = 0; k < feats.size(); ++k) local_col[feats[k]] = k;
    for (std::size_t k = 0; k < members[b].size(); ++k) local_row[members[b][k]] = k;
    std::vector<MatrixEntry> entries;
    std::vector<DiscreteDistribution> features;
    for (std::size_t i : members[b])
      for (const auto& [j, a] : inst.row(i))
        entries.push_back({local_row[i], local_col[j], a});
    features.reserve(feats.size());
    for (std::size_t j : feats) features.push_back(inst.feature(j));
    LinearInstance sub(members[b].size(), feats.size(), std::move(entries),
                       std::move(features));
    SingleItemPolicy pol =
        row_sparse_policy(sub, derive_seed(seed, SeedTag::bucket_policy, b), cfg);
    policies[b] = pol.policy;
    run.bucket_plans[b] = std::move(pol.plan);
  }

  Realization real = realize(inst, seed, 0);
  run.transcript.budget = r;
  run.transcript.fills.assign(r, 0);
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t b = run.bucket_of[i];
    if (!policies[b]) continue;
    if (policies[b]->offer(local_row[i], real.x[i])) {
      ++run.transcript.fills[b];
      run.transcript.takes.push_back({i, real.x[i], b, 0, true});
      ++run.transcript.kept_count;
      run.transcript.kept_value += real.x[i];
    }
  }
  return run;
}

Json SmallRRun::to_json() const {
  Json j;
  j["transcript"] = transcript.to_json();
  Json assignment = Json::array();
  for (std::size_t b : bucket_of) assignment.push_back(b == npos ? Json(nullptr) : Json(b));
  j["bucket_of"] = std::move(assignment);
  j["taus"] = taus;
  return j;
}

SmallRRun small_r_col_sparse(const LinearInstance& inst, std::size_t r, std::uint64_t seed,
                             const OracleConfig& cfg) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  std::size_t s_col = std::max<std::size_t>(1, col_sparsity(inst));
  std::size_t c = std::max(r, s_col);
  SmallRRun run;
  auto rng = make_rng(derive_seed(seed, SeedTag::partition));
  run.bucket_of.resize(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t slot = uniform_below(rng, c);
    run.bucket_of[i] = slot < r ? slot : npos;  // slots past r form the discard pile
  }

  run.taus.resize(r);
  std::vector<bool> include(inst.n());
  for (std::size_t b = 0; b < r; ++b) {
    for (std::size_t i = 0; i < inst.n(); ++i) include[i] = run.bucket_of[i] == b;
    auto assigned = col_sparse_assignment(inst, include);
    Estimate max_z =
        expected_max_of_disjoint_sums(inst, assigned, cfg, derive_seed(seed, SeedTag::estimate, b));
    run.taus[b] = 0.5 * max_z.mean;
  }

  Realization real = realize(inst, seed, 0);
  run.transcript.budget = r;
  run.transcript.fills.assign(r, 0);
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t b = run.bucket_of[i];
    if (b == npos) {
      ++run.transcript.pile;
    } else if (run.transcript.fills[b] == 1) {
      ++run.transcript.overflow;
    } else if (real.x[i] < run.taus[b]) {
      ++run.transcript.below_threshold;
    } else {
      run.transcript.fills[b] = 1;
      run.transcript.takes.push_back({i, real.x[i], b, 0, true});
      ++run.transcript.kept_count;
      run.transcript.kept_value += real.x[i];
    }
  }
  return run;
}

}  // namespace lcp
