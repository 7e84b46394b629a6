#include "lcp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace lcp {

namespace {

// Sum of the r largest entries of buf (buf is clobbered).
double top_r_sum(std::vector<double>& buf, std::size_t r) {
  if (r >= buf.size()) return std::accumulate(buf.begin(), buf.end(), 0.0);
  std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(r - 1), buf.end(),
                   std::greater<double>());
  double s = 0.0;
  for (std::size_t k = 0; k < r; ++k) s += buf[k];
  return s;
}

void check_cap(const LinearInstance& inst, std::size_t cap, const char* what) {
  if (joint_support_size(inst, cap) > cap)
    throw SupportTooLarge(std::string(what) + ": joint support exceeds cap of " +
                          std::to_string(cap));
}

}  // namespace

void for_each_scenario(const LinearInstance& inst, std::size_t cap,
                       const std::function<void(std::span<const double>, std::span<const double>,
                                                double)>& fn) {
  check_cap(inst, cap, "for_each_scenario");
  const std::size_t m = inst.m();
  std::vector<std::size_t> digit(m, 0);
  std::vector<double> y(m), x(inst.n());
  for (std::size_t j = 0; j < m; ++j) y[j] = inst.feature(j).atoms()[0].value;
  for (;;) {
    double prob = 1.0;
    for (std::size_t j = 0; j < m; ++j) prob *= inst.feature(j).atoms()[digit[j]].prob;
    for (std::size_t i = 0; i < inst.n(); ++i) x[i] = inst.row_value(i, y);
    fn(y, x, prob);
    // odometer, last feature fastest
    std::size_t j = m;
    while (j > 0) {
      --j;
      if (digit[j] + 1 < inst.feature(j).size()) {
        ++digit[j];
        y[j] = inst.feature(j).atoms()[digit[j]].value;
        for (std::size_t k = j + 1; k < m; ++k) {
          digit[k] = 0;
          y[k] = inst.feature(k).atoms()[0].value;
        }
        break;
      }
      if (j == 0) return;
    }
    if (m == 0) return;
  }
}

ScenarioTable enumerate_scenarios(const LinearInstance& inst, std::size_t cap) {
  ScenarioTable table;
  table.scenarios.reserve(joint_support_size(inst, cap));
  for_each_scenario(inst, cap,
                    [&](std::span<const double> y, std::span<const double> x, double p) {
                      table.scenarios.push_back(
                          {{y.begin(), y.end()}, {x.begin(), x.end()}, p});
                    });
  return table;
}

Estimate exact_prophet_value(const LinearInstance& inst, std::size_t r, const OracleConfig& cfg) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  double total = 0.0;
  std::uint64_t count = 0;
  std::vector<double> buf;
  for_each_scenario(inst, cfg.enumeration_cap,
                    [&](std::span<const double>, std::span<const double> x, double p) {
                      buf.assign(x.begin(), x.end());
                      total += p * top_r_sum(buf, r);
                      ++count;
                    });
  return Estimate::exact_value(total, count);
}

Estimate exact_policy_value(const LinearInstance& inst, OnlinePolicy& policy, std::size_t r,
                            const OracleConfig& cfg) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  double total = 0.0;
  std::uint64_t count = 0;
  for_each_scenario(inst, cfg.enumeration_cap,
                    [&](std::span<const double>, std::span<const double> x, double p) {
                      policy.reset();
                      total += p * run_policy(policy, x, r).total;
                      ++count;
                    });
  return Estimate::exact_value(total, count);
}

namespace {

// Scenario tree shared by the stopping-rule oracles. Scenarios are sorted
// lexicographically by x-vector so every set of observation-consistent
// scenarios is a contiguous range.
struct SortedScenarios {
  std::vector<std::vector<double>> x;  // indexed by sorted position
  std::vector<double> psum;            // prefix sums of probabilities
  std::size_t n = 0;

  double mass(std::size_t lo, std::size_t hi) const { return psum[hi] - psum[lo]; }
};

SortedScenarios sort_scenarios(const LinearInstance& inst, std::size_t cap) {
  check_cap(inst, cap, "online optimum");
  SortedScenarios s;
  s.n = inst.n();
  std::vector<double> probs;
  for_each_scenario(inst, cap,
                    [&](std::span<const double>, std::span<const double> x, double p) {
                      s.x.emplace_back(x.begin(), x.end());
                      probs.push_back(p);
                    });
  std::vector<std::size_t> idx(s.x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(s.x[a].begin(), s.x[a].end(), s.x[b].begin(),
                                        s.x[b].end());
  });
  std::vector<std::vector<double>> xs;
  xs.reserve(idx.size());
  s.psum.assign(1, 0.0);
  for (std::size_t k : idx) {
    xs.push_back(std::move(s.x[k]));
    s.psum.push_back(s.psum.back() + probs[k]);
  }
  s.x = std::move(xs);
  return s;
}

// V[b] for the range [lo, hi) of scenarios that share observations up to
// depth; ties between stop and continue resolve to stop (values coincide).
std::vector<double> dp_values(const SortedScenarios& s, std::size_t lo, std::size_t hi,
                              std::size_t depth, std::size_t budget) {
  std::vector<double> v(budget + 1, 0.0);
  if (depth == s.n) return v;
  double node_mass = s.mass(lo, hi);
  if (node_mass <= 0.0) return v;
  std::size_t child_lo = lo;
  while (child_lo < hi) {
    std::size_t child_hi = child_lo + 1;
    const double value = s.x[child_lo][depth];
    while (child_hi < hi && s.x[child_hi][depth] == value) ++child_hi;
    std::vector<double> child = dp_values(s, child_lo, child_hi, depth + 1, budget);
    double w = s.mass(child_lo, child_hi);
    for (std::size_t b = budget; b > 0; --b) {
      double take = value + child[b - 1];
      double skip = child[b];
      v[b] += w * (take >= skip ? take : skip);
    }
    child_lo = child_hi;
  }
  for (double& e : v) e /= node_mass;
  return v;
}

}  // namespace

Estimate exact_online_optimum(const LinearInstance& inst, std::size_t r, const OracleConfig& cfg) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  SortedScenarios s = sort_scenarios(inst, cfg.dp_cap);
  std::size_t budget = std::min(r, inst.n());
  std::vector<double> v = dp_values(s, 0, s.x.size(), 0, budget);
  return Estimate::exact_value(v[budget], s.x.size());
}

ThresholdResponse threshold_response(const LinearInstance& inst, const OracleConfig& cfg) {
  std::unordered_set<double> seen;
  for_each_scenario(inst, cfg.enumeration_cap,
                    [&](std::span<const double>, std::span<const double> x, double) {
                      for (double v : x) seen.insert(v);
                      if (seen.size() > cfg.threshold_candidate_cap)
                        throw SupportTooLarge("too many distinct achievable values");
                    });
  ThresholdResponse resp;
  resp.taus.assign(seen.begin(), seen.end());
  std::sort(resp.taus.begin(), resp.taus.end());
  const auto& taus = resp.taus;
  std::vector<double> diff(taus.size() + 1, 0.0);
  // A scenario pays x_i into every tau in (prefix max, x_i]: exactly the
  // thresholds whose first crossing is arrival i.
  for_each_scenario(inst, cfg.enumeration_cap,
                    [&](std::span<const double>, std::span<const double> x, double p) {
                      double prefmax = -std::numeric_limits<double>::infinity();
                      for (double v : x) {
                        if (v > prefmax) {
                          auto lo = std::upper_bound(taus.begin(), taus.end(), prefmax);
                          auto hi = std::upper_bound(taus.begin(), taus.end(), v);
                          diff[static_cast<std::size_t>(lo - taus.begin())] += p * v;
                          diff[static_cast<std::size_t>(hi - taus.begin())] -= p * v;
                          prefmax = v;
                        }
                      }
                    });
  resp.values.resize(taus.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    acc += diff[k];
    resp.values[k] = acc;
  }
  return resp;
}

BestThreshold best_fixed_threshold(const LinearInstance& inst, const OracleConfig& cfg) {
  ThresholdResponse resp = threshold_response(inst, cfg);
  BestThreshold best;
  best.value = Estimate::exact_value(0.0, joint_support_size(inst, cfg.enumeration_cap));
  best.tau = std::numeric_limits<double>::infinity();  // take nothing
  for (std::size_t k = 0; k < resp.taus.size(); ++k) {
    if (resp.values[k] >= best.value.mean) {  // prefer the largest maximizer
      best.value.mean = resp.values[k];
      best.tau = resp.taus[k];
    }
  }
  return best;
}

Estimate mc_value(const JointSampler& sampler, OnlinePolicy& policy, std::size_t r,
                  std::size_t num_samples, std::uint64_t seed) {
  if (num_samples == 0) throw std::invalid_argument("need at least one sample");
  RunningStats stats;
  std::vector<double> x;
  for (std::size_t t = 0; t < num_samples; ++t) {
    sampler.draw(seed, t, x);
    policy.reset();
    stats.add(run_policy(policy, x, r).total);
  }
  return stats.estimate();
}

namespace {

struct PrefixNode {
  std::size_t depth = 0;  // number of observed arrivals, >= 1
  double value = 0.0;     // last observed arrival value
  double mass = 0.0;
  std::vector<std::size_t> children;
};

// Enumerate every take/skip assignment over the prefix tree, accumulating the
// first-take value along each scenario path.  Pure exhaustive search, no
// Bellman recursion, used to cross-check the DP.
struct PolicyEnumerator {
  const std::vector<PrefixNode>& nodes;
  std::uint64_t cap;
  std::uint64_t count = 0;
  double best = 0.0;

  void go(std::vector<std::size_t>& frontier, double acc) {
    if (frontier.empty()) {
      if (++count > cap) throw SupportTooLarge("brute-force policy space exceeds cap");
      best = std::max(best, acc);
      return;
    }
    std::size_t id = frontier.back();
    frontier.pop_back();
    go(frontier, acc + nodes[id].mass * nodes[id].value);  // take here
    std::size_t before = frontier.size();
    for (std::size_t c : nodes[id].children) frontier.push_back(c);
    go(frontier, acc);  // skip here
    frontier.resize(before);
    frontier.push_back(id);
  }
};

}  // namespace

double brute_force_online_optimum(const LinearInstance& inst, const OracleConfig& cfg,
                                  std::uint64_t policy_cap) {
  SortedScenarios s = sort_scenarios(inst, cfg.dp_cap);
  std::vector<PrefixNode> nodes;
  std::vector<std::size_t> roots;
  // Build the prefix tree breadth-first from sorted scenario ranges.
  struct Range {
    std::size_t lo, hi, depth, parent;
  };
  std::vector<Range> queue{{0, s.x.size(), 0, npos}};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Range r = queue[q];
    if (r.depth == s.n) continue;
    std::size_t child_lo = r.lo;
    while (child_lo < r.hi) {
      std::size_t child_hi = child_lo + 1;
      const double value = s.x[child_lo][r.depth];
      while (child_hi < r.hi && s.x[child_hi][r.depth] == value) ++child_hi;
      std::size_t id = nodes.size();
      nodes.push_back({r.depth + 1, value, s.mass(child_lo, child_hi), {}});
      if (r.parent == npos)
        roots.push_back(id);
      else
        nodes[r.parent].children.push_back(id);
      queue.push_back({child_lo, child_hi, r.depth + 1, id});
      child_lo = child_hi;
    }
  }
  // Fail fast when the policy space is too large to enumerate.
  {
    std::vector<double> g(nodes.size(), 0.0);
    for (std::size_t id = nodes.size(); id-- > 0;) {
      double prod = 1.0;
      for (std::size_t c : nodes[id].children) prod *= g[c];
      g[id] = 1.0 + prod;
    }
    double total = 1.0;
    for (std::size_t rt : roots) total *= g[rt];
    if (total > static_cast<double>(policy_cap))
      throw SupportTooLarge("brute-force policy space exceeds cap");
  }
  PolicyEnumerator e{nodes, policy_cap, 0, 0.0};
  std::vector<std::size_t> frontier(roots.rbegin(), roots.rend());
  e.go(frontier, 0.0);
  return e.best;
}

double expected_max_independent(const std::vector<DiscreteDistribution>& dists) {
  if (dists.empty()) throw std::invalid_argument("need at least one distribution");
  std::vector<double> values;
  for (const auto& d : dists)
    for (const auto& a : d.atoms()) values.push_back(a.value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  double e = 0.0, prev = 0.0;
  for (double v : values) {
    double f = 1.0;
    for (const auto& d : dists) f *= d.cdf(v);
    e += v * (f - prev);
    prev = f;
  }
  return e;
}

double median_of_max_independent(const std::vector<DiscreteDistribution>& dists) {
  if (dists.empty()) throw std::invalid_argument("need at least one distribution");
  std::vector<double> values;
  for (const auto& d : dists)
    for (const auto& a : d.atoms()) values.push_back(a.value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (double v : values) {
    double f = 1.0;
    for (const auto& d : dists) f *= d.cdf(v);
    if (f >= 0.5) return v;
  }
  return values.back();
}

Estimate expected_top_r_independent(const std::vector<DiscreteDistribution>& dists, std::size_t r,
                                    std::size_t num_samples, std::uint64_t seed,
                                    const OracleConfig& cfg) {
  if (dists.empty() || r == 0) throw std::invalid_argument("need distributions and r >= 1");
  std::size_t combos = 1;
  bool exact = true;
  for (const auto& d : dists) {
    if (combos > cfg.enumeration_cap / d.size()) {
      exact = false;
      break;
    }
    combos *= d.size();
  }
  std::vector<double> buf(dists.size());
  if (exact) {
    std::vector<std::size_t> digit(dists.size(), 0);
    double total = 0.0;
    std::uint64_t count = 0;
    for (;;) {
      double p = 1.0;
      for (std::size_t j = 0; j < dists.size(); ++j) {
        buf[j] = dists[j].atoms()[digit[j]].value;
        p *= dists[j].atoms()[digit[j]].prob;
      }
      std::vector<double> copy = buf;
      total += p * top_r_sum(copy, r);
      ++count;
      std::size_t j = dists.size();
      bool done = true;
      while (j-- > 0) {
        if (digit[j] + 1 < dists[j].size()) {
          ++digit[j];
          std::fill(digit.begin() + static_cast<std::ptrdiff_t>(j) + 1, digit.end(), 0);
          done = false;
          break;
        }
      }
      if (done) break;
    }
    return Estimate::exact_value(total, count);
  }
  RunningStats stats;
  for (std::size_t t = 0; t < num_samples; ++t) {
    auto rng = make_rng(derive_seed(seed, SeedTag::trial, t));
    for (std::size_t j = 0; j < dists.size(); ++j) buf[j] = dists[j].sample(rng);
    std::vector<double> copy = buf;
    stats.add(top_r_sum(copy, r));
  }
  return stats.estimate();
}

}  // namespace lcp
