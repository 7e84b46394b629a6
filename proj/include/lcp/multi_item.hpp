#pragma once

#include "lcp/single_item.hpp"

namespace lcp {

// Geometric threshold ladder for cardinality budget r. tau_0 = E[OPT]/eps,
// tau_j = (1-eps) tau_{j-1}; bucket 0 holds a single slot, bucket j >= 1
// holds bucket_mass[j] + beta where bucket_mass[j] estimates the expected
// number of top-r base values landing in [tau_j, tau_{j-1}].
struct BucketConfig {
  double eps = 0.0;
  std::size_t r = 0;
  std::size_t c = 0;  // thresholds run tau[0] .. tau[c]
  double beta = 0.0;
  Estimate opt;  // E[sum of top-r base values]
  std::vector<double> tau;           // length c + 1, descending
  std::vector<Estimate> bucket_mass; // length c + 1; index 0 unused
  std::vector<double> capacity;      // length c + 1; capacity[0] == 1

  // Smallest eps for which the (1 - O(eps)) guarantee is proved; above any
  // desk-scale value. Recorded, never enforced.
  double eps_guarantee_bound = 0.0;
  bool guarantee_applies = false;

  Json to_json() const;
};

BucketConfig compute_bucket_config(const std::vector<DiscreteDistribution>& z_dists,
                                   std::size_t r, double eps, std::uint64_t seed,
                                   const OracleConfig& cfg = {});

struct TakeEvent {
  std::size_t arrival = 0;
  double value = 0.0;
  std::size_t bucket = 0;
  std::size_t group = 0;  // nonzero only in merged group transcripts
  bool kept = true;       // false when thinned out or over the budget
  bool operator==(const TakeEvent&) const = default;
};

struct SelectionTranscript {
  std::size_t budget = 0;
  std::vector<TakeEvent> takes;       // arrival order
  std::vector<std::size_t> fills;     // per-bucket occupancy, takes included
  std::size_t below_threshold = 0;    // values under the lowest threshold
  std::size_t overflow = 0;           // no bucket had room
  std::size_t thinned = 0;            // lost the keep coin after a take
  std::size_t over_budget = 0;        // kept-coin winners past the budget
  std::size_t pile = 0;               // sent to the discard pile up front
  std::size_t kept_count = 0;
  double kept_value = 0.0;

  Json to_json() const;
  bool operator==(const SelectionTranscript&) const = default;
};

// One arrival at a time. A value below tau[c] is dropped; otherwise it lands
// in the highest bucket whose threshold it meets and trickles down past full
// buckets. Each take flips an independent keep coin with failure probability
// eps, and winners beyond the budget are dropped too.
class BucketPolicy {
 public:
  BucketPolicy(const BucketConfig& config, std::uint64_t coin_seed);
  bool offer(std::size_t arrival, double x);  // true when the value is kept
  const SelectionTranscript& transcript() const { return t_; }

 private:
  const BucketConfig* config_;
  std::mt19937_64 coin_;
  SelectionTranscript t_;
};

SelectionTranscript run_bucket_policy(const BucketConfig& config, std::span<const double> x,
                                      std::uint64_t coin_seed);

// Draws the base values in arrival order from derive_seed(seed, z_draw),
// applies the adversary boost, and feeds the stream to a BucketPolicy with
// coins from derive_seed(seed, discard).
SelectionTranscript run_bucket_algorithm(const BucketConfig& config,
                                         const AugmentedStream& stream, std::uint64_t seed);

// Arrivals split uniformly into ceil(s_col / eps_prime) groups, each with
// budget floor(eps_prime * r / s_col).
struct GroupPartition {
  double eps_prime = 0.0;
  std::size_t groups = 0;
  std::size_t group_budget = 0;
  std::vector<std::size_t> assignment;  // arrival -> group
  Json to_json() const;
};

GroupPartition draw_group_partition(std::size_t n, std::size_t s_col, std::size_t r,
                                    double eps_prime, std::uint64_t seed);

// Features carried by exactly one member of the group; member order. The
// group's base value Z'_i sums these for arrival i.
std::vector<std::vector<std::size_t>> group_unique_features(const LinearInstance& inst,
                                                            const GroupPartition& partition,
                                                            std::size_t gid);

struct MultiItemRun {
  SelectionTranscript merged;
  GroupPartition partition;
  std::vector<BucketConfig> group_configs;
  std::vector<SelectionTranscript> per_group;
  Json to_json() const;
};

// Group reduction for column-sparse instances: per-group bucket algorithm on
// the unique-feature base values, merged in arrival order under the global
// budget r. eps_prime in (0, 1]; rejects when the per-group budget floors
// to zero.
MultiItemRun col_sparse_multi(const LinearInstance& inst, std::size_t r, double eps_prime,
                              double bucket_eps, std::uint64_t seed,
                              const OracleConfig& cfg = {});

struct RowSparseMultiRun {
  SelectionTranscript transcript;
  std::vector<std::size_t> bucket_of;       // arrival -> bucket
  std::vector<InclusionPlan> bucket_plans;  // plans over local row indices
  Json to_json() const;
};

// r independent buckets, each running the single-item representative
// policy on the sub-instance induced by its arrivals. At most one take per
// bucket.
RowSparseMultiRun row_sparse_multi(const LinearInstance& inst, std::size_t r,
                                   std::uint64_t seed, const OracleConfig& cfg = {});

struct SmallRRun {
  SelectionTranscript transcript;
  std::vector<std::size_t> bucket_of;  // arrival -> bucket, npos = discard pile
  std::vector<double> taus;            // per-bucket half expected max
  Json to_json() const;
};

// Small-budget column-sparse algorithm: c = max(r, s_col) slots per arrival,
// r of them real buckets and the rest a discard pile. Each bucket scores its
// members on fresh features and takes the first value meeting half the
// expected in-bucket max.
SmallRRun small_r_col_sparse(const LinearInstance& inst, std::size_t r, std::uint64_t seed,
                             const OracleConfig& cfg = {});

}  // namespace lcp
