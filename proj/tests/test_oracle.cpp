#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "lcp/generators.hpp"
#include "lcp/oracle.hpp"
#include "lcp/repro.hpp"

using namespace lcp;

namespace {
// Two arrivals on two levels: X0 ambiguous between its own feature and a
// tenth of the second, X1 pure. Every expectation below is hand-checkable.
LinearInstance two_tower() { return gen_tower2(2, 0.1); }
}  // namespace

TEST_CASE("two-level tower: frozen oracle values") {
  LinearInstance inst = two_tower();

  Estimate prophet = exact_prophet_value(inst, 1);
  CHECK(prophet.exact);
  CHECK(prophet.n == 4);
  CHECK(prophet.mean == doctest::Approx(1.99).epsilon(1e-12));

  Estimate online = exact_online_optimum(inst, 1);
  CHECK(online.exact);
  CHECK(online.mean == doctest::Approx(1.18).epsilon(1e-12));

  BestThreshold best = best_fixed_threshold(inst);
  CHECK(best.tau == 10.0);  // largest maximizer among the achievable values
  CHECK(best.value.mean == doctest::Approx(1.1).epsilon(1e-12));

  // Any threshold in (0, 10] takes the same arrivals.
  ThresholdPolicy five(5.0);
  CHECK(exact_policy_value(inst, five, 1).mean == doctest::Approx(1.1).epsilon(1e-12));

  // Budget 2 takes everything: online optimum meets the prophet exactly.
  Estimate prophet2 = exact_prophet_value(inst, 2);
  Estimate online2 = exact_online_optimum(inst, 2);
  CHECK(prophet2.mean == doctest::Approx(2.1).epsilon(1e-12));
  CHECK(online2.mean == doctest::Approx(prophet2.mean).epsilon(1e-14));
}

TEST_CASE("threshold response covers the best fixed threshold") {
  LinearInstance inst = two_tower();
  ThresholdResponse resp = threshold_response(inst);
  REQUIRE(!resp.taus.empty());
  CHECK(std::is_sorted(resp.taus.begin(), resp.taus.end()));
  BestThreshold best = best_fixed_threshold(inst);
  double top = *std::max_element(resp.values.begin(), resp.values.end());
  CHECK(top == best.value.mean);
  // The reported tau is the largest among the maximizers.
  for (std::size_t k = 0; k < resp.taus.size(); ++k)
    if (resp.values[k] == top) CHECK(resp.taus[k] <= best.tau);
}

TEST_CASE("value hierarchy: fixed <= online optimum <= prophet") {
  for (const LinearInstance& inst : smoke_corpus(1)) {
    double fixed = best_fixed_threshold(inst).value.mean;
    double online = exact_online_optimum(inst, 1).mean;
    double prophet = exact_prophet_value(inst, 1).mean;
    CHECK(fixed <= online + 1e-12);
    CHECK(online <= prophet + 1e-12);
  }
}

TEST_CASE("backward induction agrees with exhaustive policy enumeration") {
  OracleConfig cfg;
  for (const LinearInstance& inst :
       {gen_tower2(2, 0.1), gen_tower_general(3, 0.05),
        gen_random_sparse(3, 3, 2, 2, FeatureSpec{}, 77)}) {
    double dp = exact_online_optimum(inst, 1, cfg).mean;
    double brute = brute_force_online_optimum(inst, cfg);
    CHECK(dp == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("prophet value is linear in the feature scale") {
  LinearInstance inst = gen_random_sparse(4, 4, 2, 2, FeatureSpec{}, 31);
  std::vector<DiscreteDistribution> doubled;
  for (std::size_t j = 0; j < inst.m(); ++j)
    doubled.push_back(scale_distribution(inst.feature(j), 2.0));
  LinearInstance scaled(inst.n(), inst.m(), inst.entries(), std::move(doubled));
  CHECK(exact_prophet_value(scaled, 1).mean ==
        doctest::Approx(2.0 * exact_prophet_value(inst, 1).mean).epsilon(1e-12));
  CHECK(exact_online_optimum(scaled, 1).mean ==
        doctest::Approx(2.0 * exact_online_optimum(inst, 1).mean).epsilon(1e-12));
}

TEST_CASE("enumeration cap raises SupportTooLarge") {
  LinearInstance inst = gen_tower_general(4, 0.1);  // 16 scenarios
  OracleConfig cfg;
  cfg.enumeration_cap = 8;
  cfg.dp_cap = 8;
  CHECK_THROWS_AS(exact_prophet_value(inst, 1, cfg), SupportTooLarge);
  CHECK_THROWS_AS(exact_online_optimum(inst, 1, cfg), SupportTooLarge);
  CHECK_THROWS_AS(enumerate_scenarios(inst, 8), SupportTooLarge);
}

TEST_CASE("scenario enumeration carries the joint law") {
  LinearInstance inst = two_tower();
  ScenarioTable table = enumerate_scenarios(inst, 1 << 20);
  REQUIRE(table.scenarios.size() == 4);
  double total = 0.0, mean_x0 = 0.0;
  for (const auto& s : table.scenarios) {
    total += s.prob;
    mean_x0 += s.prob * s.x[0];
    CHECK(s.x == inst.x_of(s.y));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mean_x0 == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("monte carlo evaluator brackets the exact policy value") {
  LinearInstance inst = gen_random_sparse(5, 5, 2, 2, FeatureSpec{}, 13);
  ThresholdPolicy pol(0.5 * exact_prophet_value(inst, 1).mean);
  double exact = exact_policy_value(inst, pol, 1).mean;
  InstanceSampler sampler(inst);
  Estimate mc = mc_value(sampler, pol, 1, 40000, 5);
  CHECK(!mc.exact);
  CHECK(std::abs(mc.mean - exact) <= 4.0 * mc.std_error + 1e-12);
}

TEST_CASE("independent-coordinate helpers on a hand example") {
  // max of Bernoulli(1 w.p. .5) and Bernoulli(2 w.p. .5)
  std::vector<DiscreteDistribution> z = {DiscreteDistribution::bernoulli_scaled(1.0, 0.5),
                                         DiscreteDistribution::bernoulli_scaled(2.0, 0.5)};
  CHECK(expected_max_independent(z) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(median_of_max_independent(z) == 1.0);

  Estimate top1 = expected_top_r_independent(z, 1, 1000, 3);
  CHECK(top1.exact);
  CHECK(top1.mean == doctest::Approx(1.25).epsilon(1e-15));
  Estimate top2 = expected_top_r_independent(z, 2, 1000, 3);
  CHECK(top2.mean == doctest::Approx(1.5).epsilon(1e-15));

  // Monte Carlo path under a tiny cap stays within noise of the exact value.
  OracleConfig cfg;
  cfg.enumeration_cap = 2;
  Estimate mc = expected_top_r_independent(z, 1, 60000, 3, cfg);
  CHECK(!mc.exact);
  CHECK(std::abs(mc.mean - 1.25) <= 4.0 * mc.std_error);
}

TEST_CASE("policy masks restrict eligibility") {
  LinearInstance inst = two_tower();
  // Excluding the first arrival leaves only X1: E[X1 | take on >= 0] = 1.
  ThresholdPolicy pol(0.0, false, std::vector<bool>{false, true});
  CHECK(exact_policy_value(inst, pol, 1).mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_policy honors the budget") {
  ThresholdPolicy pol(1.0);
  std::vector<double> x = {2.0, 3.0, 4.0};
  PolicyRun one = run_policy(pol, x, 1);
  CHECK(one.takes.size() == 1);
  CHECK(one.total == 2.0);
  // ThresholdPolicy itself takes once; a fresh policy per budget level.
  ThresholdPolicy pol2(1.0);
  PolicyRun two = run_policy(pol2, x, 3);
  CHECK(two.takes.size() == 1);

  CHECK_THROWS_AS(exact_policy_value(two_tower(), pol, 0), std::invalid_argument);
  CHECK_THROWS_AS(exact_prophet_value(two_tower(), 0), std::invalid_argument);
}
