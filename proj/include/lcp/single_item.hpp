#pragma once

#include "lcp/augmented.hpp"
#include "lcp/io.hpp"
#include "lcp/oracle.hpp"

namespace lcp {

// tau = E[max_i Z_i] / 2 for independent base values; exact product form.
double half_expected_max_threshold(const std::vector<DiscreteDistribution>& z_dists);
// Smallest support point t with Pr[max Z <= t] >= 1/2.
double median_of_max_threshold(const std::vector<DiscreteDistribution>& z_dists);

// Construction transcript for the inclusion-threshold policies: the inclusion
// set S, the feature set T_i each included arrival scores on, and how tau was
// estimated.
struct InclusionPlan {
  std::vector<bool> include;                       // S mask over arrivals
  std::vector<std::vector<std::size_t>> assigned;  // T_i per arrival
  std::vector<std::size_t> matched_feature;        // j(i) or npos
  double tau = 0.0;
  Estimate max_z;  // E[max Z] estimate behind tau
  Json to_json() const;
};

struct SingleItemPolicy {
  ThresholdPolicy policy;
  InclusionPlan plan;
};

// T_i for a given inclusion set: the features of arrival i not carried by any
// earlier included arrival. The T_i are disjoint.
std::vector<std::vector<std::size_t>> col_sparse_assignment(const LinearInstance& inst,
                                                            const std::vector<bool>& include);

// E[max_i Z_i] where Z_i = sum_{j in assigned[i]} A_ij Y_j over disjoint
// feature sets. Exact product form when the per-arrival convolutions fit
// under cfg.enumeration_cap, Monte Carlo over feature draws otherwise.
Estimate expected_max_of_disjoint_sums(const LinearInstance& inst,
                                       const std::vector<std::vector<std::size_t>>& assigned,
                                       const OracleConfig& cfg, std::uint64_t seed);

// Include each arrival independently w.p. 1/col_sparsity; score included
// arrivals on their fresh features; tau = E[max Z] / 2.
SingleItemPolicy col_sparse_policy(const LinearInstance& inst, std::uint64_t seed,
                                   const OracleConfig& cfg = {});

struct RepresentativeConstruction {
  std::vector<std::size_t> arrivals;            // S, ascending
  std::vector<std::size_t> features;            // T, ascending
  std::vector<std::size_t> feature_of_arrival;  // j(i) or npos, length n
  std::vector<std::size_t> primary_of_feature;  // i(j), length m
  std::vector<std::size_t> order;               // peeling order pi
};

// Deterministic part of the representative construction over a
// column-normalized instance: primaries, the conflict graph, and the peeling
// order. sample() draws the randomized sweep.
class RepresentativeScheme {
 public:
  explicit RepresentativeScheme(const LinearInstance& normalized);

  RepresentativeConstruction sample(std::uint64_t seed) const;
  std::size_t s_row() const { return s_row_; }
  const std::vector<std::size_t>& order() const { return order_; }
  const std::vector<std::size_t>& primaries() const { return primary_; }
  // In-degree of order[k] within the subgraph induced by order[0..k]; every
  // entry is at most s_row - 1.
  const std::vector<std::size_t>& peel_in_degrees() const { return peel_indeg_; }

 private:
  bool adjacent(std::size_t a, std::size_t b) const;

  std::size_t n_ = 0, m_ = 0, s_row_ = 0;
  std::vector<std::size_t> primary_;            // i(j)
  std::vector<std::vector<std::size_t>> out_;   // j -> j' edges
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> peel_indeg_;
};

RepresentativeConstruction representative_construction(const LinearInstance& normalized,
                                                       std::uint64_t seed);

// Normalizes columns, samples a representative construction, scores each
// selected arrival on its matched feature; tau = E[max Z] / 2 (exact).
SingleItemPolicy row_sparse_policy(const LinearInstance& inst, std::uint64_t seed,
                                   const OracleConfig& cfg = {});

// Threshold selection for 0/1 instances.
struct UnweightedThresholds {
  double boundary_tau = 0.0;        // smallest support point with prod(1-p_j) >= 1/2
  std::vector<double> exceed_prob;  // p_j = Pr[Y_j > boundary_tau]
  double tail_mass = 0.0;           // sum_j p_j E[Y_j | Y_j > boundary_tau]
  Estimate core_value;              // V = E[max X | no Y_j > boundary_tau]
  double tau_tail = 0.0;            // half expected max of fresh-feature sums
  double tau_core = 0.0;            // V / 2
  double chosen_tau = 0.0;
  std::string chosen;               // "tail" | "boundary" | "core"
  Json to_json() const;
};

struct UnweightedPolicy {
  ThresholdPolicy policy;
  UnweightedThresholds thresholds;
};

// Requires all coefficients equal to 1. Chooses tau_tail when the tail mass
// dominates V, the boundary threshold when it clears V/10, else tau_core.
UnweightedPolicy unweighted_policy(const LinearInstance& inst, const OracleConfig& cfg = {},
                                   std::uint64_t seed = 0);

// tau = (MC estimate of E[max X]) / 2 for an arbitrary joint sampler.
struct NaPolicy {
  ThresholdPolicy policy;
  Estimate max_x;
};
NaPolicy na_threshold_policy(const JointSampler& sampler, std::size_t num_samples,
                             std::uint64_t seed);

}  // namespace lcp
