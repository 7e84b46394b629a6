#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "lcp/generators.hpp"
#include "lcp/single_item.hpp"

using namespace lcp;

namespace {
// X0 = Y0, X1 = Y1, X2 = 0.99 (Y0 + Y1): the late arrival rides on both
// earlier features, so whoever is included first claims them.
LinearInstance piggyback() {
  return LinearInstance(3, 2,
                        {{0, 0, 1.0}, {1, 1, 1.0}, {2, 0, 0.99}, {2, 1, 0.99}},
                        {DiscreteDistribution::bernoulli_scaled(10.0, 0.5),
                         DiscreteDistribution::bernoulli_scaled(8.0, 0.5)});
}
}  // namespace

TEST_CASE("fresh-feature assignment claims features in arrival order") {
  LinearInstance inst = piggyback();

  auto all = col_sparse_assignment(inst, {true, true, true});
  CHECK(all[0] == std::vector<std::size_t>{0});
  CHECK(all[1] == std::vector<std::size_t>{1});
  CHECK(all[2].empty());  // both features already carried

  auto last_only = col_sparse_assignment(inst, {false, false, true});
  CHECK(last_only[0].empty());
  CHECK(last_only[1].empty());
  CHECK(last_only[2] == std::vector<std::size_t>{0, 1});

  auto skip_first = col_sparse_assignment(inst, {false, true, true});
  CHECK(skip_first[1] == std::vector<std::size_t>{1});
  CHECK(skip_first[2] == std::vector<std::size_t>{0});

  CHECK_THROWS_AS(col_sparse_assignment(inst, {true}), std::invalid_argument);
}

TEST_CASE("expected max of disjoint sums has exact product form") {
  LinearInstance inst = piggyback();
  // Arrivals 0 and 1 on their own features: max of Bern(10 w.p. .5), Bern(8 w.p. .5).
  Estimate m = expected_max_of_disjoint_sums(inst, {{0}, {1}, {}}, OracleConfig{}, 1);
  CHECK(m.exact);
  // E = .25*0 + .5*10 + .25*8
  CHECK(m.mean == doctest::Approx(7.0).epsilon(1e-15));

  // Arrival 2 on both features: .99 (Y0 + Y1).
  Estimate s = expected_max_of_disjoint_sums(inst, {{}, {}, {0, 1}}, OracleConfig{}, 1);
  CHECK(s.exact);
  CHECK(s.mean == doctest::Approx(0.99 * (0.25 * 18.0 + 0.25 * 10.0 + 0.25 * 8.0))
                      .epsilon(1e-12));
}

TEST_CASE("column-sparse policy: inclusion rate and threshold") {
  LinearInstance inst = piggyback();  // s_col = 2
  std::size_t included = 0, draws = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    SingleItemPolicy pol = col_sparse_policy(inst, seed);
    CHECK(pol.policy.tau == 0.5 * pol.plan.max_z.mean);
    CHECK(pol.plan.include.size() == inst.n());
    CHECK(pol.policy.include.has_value());
    std::set<std::size_t> claimed;
    for (std::size_t i = 0; i < inst.n(); ++i) {
      included += pol.plan.include[i];
      ++draws;
      for (std::size_t j : pol.plan.assigned[i]) CHECK(claimed.insert(j).second);
      if (!pol.plan.include[i]) CHECK(pol.plan.assigned[i].empty());
    }
  }
  // Each arrival joins w.p. 1/s_col = 1/2.
  double freq = static_cast<double>(included) / static_cast<double>(draws);
  double se = std::sqrt(0.25 / static_cast<double>(draws));
  CHECK(std::abs(freq - 0.5) <= 4.0 * se);

  // s_col = 1 instances include everyone.
  LinearInstance diag(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}},
                      {DiscreteDistribution::bernoulli_scaled(4.0, 0.3),
                       DiscreteDistribution::bernoulli_scaled(7.0, 0.25)});
  SingleItemPolicy pol = col_sparse_policy(diag, 9);
  CHECK(pol.plan.include == std::vector<bool>{true, true});
  CHECK(pol.policy.tau == 0.5 * expected_max_independent(
                              {scale_distribution(diag.feature(0), 1.0),
                               scale_distribution(diag.feature(1), 1.0)}));
}

TEST_CASE("representative scheme peels with bounded in-degree") {
  for (std::size_t c : {2ul, 3ul, 5ul}) {
    LinearInstance norm = normalize_columns(gen_tower_general(c, 0.05));
    RepresentativeScheme scheme(norm);
    CHECK(scheme.s_row() == c);
    REQUIRE(scheme.order().size() == norm.m());
    std::set<std::size_t> ordered(scheme.order().begin(), scheme.order().end());
    CHECK(ordered.size() == norm.m());
    for (std::size_t d : scheme.peel_in_degrees()) CHECK(d <= c - 1);

    RepresentativeConstruction cons = scheme.sample(17);
    CHECK(cons.order == scheme.order());
    std::set<std::size_t> claimed;
    for (std::size_t k = 0; k < cons.arrivals.size(); ++k) {
      std::size_t i = cons.arrivals[k];
      std::size_t j = cons.feature_of_arrival[i];
      REQUIRE(j != npos);
      CHECK(cons.primary_of_feature[j] == i);
      CHECK(claimed.insert(j).second);  // matched features are distinct
    }
    // Arrivals outside S carry no matched feature.
    std::set<std::size_t> sel(cons.arrivals.begin(), cons.arrivals.end());
    for (std::size_t i = 0; i < norm.n(); ++i)
      if (!sel.count(i)) CHECK(cons.feature_of_arrival[i] == npos);
  }
  // The towers are already column-normalized (unit diagonal tops each
  // column); a column whose max coefficient is not 1 is rejected.
  LinearInstance off(1, 1, {{0, 0, 2.0}}, {DiscreteDistribution::constant(1.0)});
  CHECK_THROWS_AS(RepresentativeScheme{off}, std::invalid_argument);
}

TEST_CASE("row-sparse policy scores selected arrivals on matched features") {
  LinearInstance inst = gen_tower_general(3, 0.05);
  SingleItemPolicy pol = row_sparse_policy(inst, 4);
  CHECK(pol.policy.tau == 0.5 * pol.plan.max_z.mean);
  CHECK(pol.plan.max_z.exact);
  CHECK(pol.plan.include.size() == inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (!pol.plan.include[i]) {
      CHECK(pol.plan.matched_feature[i] == npos);
    } else {
      REQUIRE(pol.plan.matched_feature[i] != npos);
      CHECK(pol.plan.assigned[i] == std::vector<std::size_t>{pol.plan.matched_feature[i]});
    }
  }
}

TEST_CASE("unweighted thresholds on boundary examples") {
  // One arrival, one almost-sure feature: the boundary threshold is its value.
  LinearInstance sure = gen_unweighted(
      1, {{0}}, {DiscreteDistribution::bernoulli_scaled(1.0, 0.9)});
  UnweightedPolicy up = unweighted_policy(sure);
  CHECK(up.thresholds.boundary_tau == 1.0);
  CHECK(up.thresholds.tail_mass == 0.0);

  // Fifty rare disjoint singletons: no value exceeds 0 with probability
  // above half, so the boundary sits at zero and the tail carries the mass.
  std::vector<std::vector<std::size_t>> sets(50);
  std::vector<DiscreteDistribution> feats;
  for (std::size_t i = 0; i < 50; ++i) {
    sets[i] = {i};
    feats.push_back(DiscreteDistribution::bernoulli_scaled(1.0, 0.01));
  }
  LinearInstance rare = gen_unweighted(50, sets, std::move(feats));
  UnweightedPolicy up2 = unweighted_policy(rare);
  CHECK(up2.thresholds.boundary_tau == 0.0);
  CHECK(up2.thresholds.tail_mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK((up2.thresholds.chosen == "tail" || up2.thresholds.chosen == "boundary" ||
         up2.thresholds.chosen == "core"));
  CHECK(up2.thresholds.chosen_tau == up2.policy.tau);

  CHECK_THROWS_AS(unweighted_policy(piggyback()), std::invalid_argument);
}

TEST_CASE("adversary boosts are shaped as documented") {
  std::vector<double> hist = {0.5, 3.0};
  std::span<const double> h(hist);
  CHECK(zero_adversary()(h, 9.0, 0) == 0.0);

  Adversary tiny = tiny_boost_first(1e-6);
  CHECK(tiny(h, 2.0, 0) == 1e-6);
  CHECK(tiny(h, 2.0, 1) == 0.0);

  Adversary lift = lift_below_threshold(1.0);
  double z = 0.3;
  double lifted = z + lift(h, z, 2);
  // Addition can round the target back up to tau, but never past it.
  CHECK(lifted >= std::nextafter(1.0, 0.0));
  CHECK(lifted <= 1.0);
  CHECK(lift(h, 1.0, 2) == 0.0);
  CHECK(lift(h, 2.0, 2) == 0.0);

  Adversary first = lift_first_to_threshold(5.0);
  CHECK(first(h, 3.0, 0) == 2.0);
  CHECK(first(h, 7.0, 0) == 0.0);
  CHECK(first(h, 3.0, 1) == 0.0);

  Adversary trig = history_triggered_boost(2.0, 10.0);
  CHECK(trig(h, 0.0, 2) == 10.0);
  CHECK(trig(std::span<const double>(hist.data(), 1), 0.0, 1) == 0.0);

  auto suite = adversary_suite(1.0);
  CHECK(suite.size() == 5);
  for (auto& [name, adv] : suite)
    for (std::size_t i = 0; i < 3; ++i) CHECK(adv(h, 0.7, i) >= 0.0);
}

TEST_CASE("half-max threshold holds its guarantee under every shipped adversary") {
  std::vector<DiscreteDistribution> z;
  for (int j = 0; j < 6; ++j)
    z.push_back(DiscreteDistribution::bernoulli_scaled(static_cast<double>(1 << j), 0.3));
  double tau = half_expected_max_threshold(z);
  CHECK(tau == 0.5 * expected_max_independent(z));
  CHECK(median_of_max_threshold(z) == median_of_max_independent(z));

  for (auto& [name, adv] : adversary_suite(tau)) {
    AugmentedStream stream{z, adv};
    ThresholdPolicy pol(tau);
    AugmentedRun run = run_augmented(stream, pol, 60000, 11);
    INFO(name);
    CHECK(run.margin.mean >= -4.0 * run.margin.std_error);
    CHECK(std::abs(run.max_z.mean - expected_max_independent(z)) <=
          4.0 * run.max_z.std_error);
  }
}

TEST_CASE("strict median rule starves on an ambiguous boost") {
  // Median of max is 0 here; the strict rule waits for > 0 + boost bait.
  std::vector<DiscreteDistribution> z(20, DiscreteDistribution::bernoulli_scaled(1.0, 0.01));
  double med = median_of_max_threshold(z);
  CHECK(med == 0.0);
  ThresholdPolicy strict(med, /*strict=*/true);
  AugmentedStream bait{z, tiny_boost_first(1e-6)};
  AugmentedRun run = run_augmented(bait, strict, 40000, 3);
  // The baited first arrival (= 1e-6 > 0) eats nearly every trial.
  CHECK(run.alg.mean < 0.05);
  CHECK(run.max_z.mean > 0.15);
}

TEST_CASE("na threshold policy halves the estimated max") {
  PermutationSampler perm({5.0, 3.0, 1.0});
  NaPolicy pol = na_threshold_policy(perm, 5000, 21);
  CHECK(pol.max_x.mean == 5.0);  // the max of a permutation is constant
  CHECK(pol.policy.tau == 2.5);
  CHECK(!pol.policy.strict);
}
