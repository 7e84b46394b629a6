#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "lcp/generators.hpp"
#include "lcp/io.hpp"
#include "lcp/sampler.hpp"

using namespace lcp;

TEST_CASE("discrete distribution merges and sorts atoms") {
  DiscreteDistribution d({{2.0, 0.25}, {0.0, 0.5}, {2.0, 0.25}});
  REQUIRE(d.size() == 2);
  CHECK(d.atoms()[0].value == 0.0);
  CHECK(d.atoms()[1].value == 2.0);
  CHECK(d.atoms()[1].prob == 0.5);
  CHECK(d.min_value() == 0.0);
  CHECK(d.max_value() == 2.0);
  CHECK(d.expectation() == 1.0);
}

TEST_CASE("distribution constructor rejects bad atoms") {
  CHECK_THROWS_AS(DiscreteDistribution({}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution({{-1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution({{1.0, 0.3}, {2.0, 0.3}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution::bernoulli_scaled(1.0, 1.5), std::invalid_argument);
}

TEST_CASE("cdf, tail, and conditional tail mean") {
  DiscreteDistribution d({{0.0, 0.5}, {1.0, 0.3}, {4.0, 0.2}});
  CHECK(d.cdf(0.0) == 0.5);
  CHECK(d.cdf(0.5) == 0.5);
  CHECK(d.cdf(1.0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(d.cdf(5.0) == 1.0);
  CHECK(d.tail_prob(1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(d.conditional_tail_mean(1.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.conditional_tail_mean(4.0) == 0.0);  // empty tail

  DiscreteDistribution t = d.truncated_at_most(1.0);
  REQUIRE(t.size() == 2);
  CHECK(t.atoms()[0].prob == doctest::Approx(0.5 / 0.8).epsilon(1e-15));
  CHECK(t.max_value() == 1.0);
  CHECK_THROWS_AS(d.truncated_at_most(-1.0), std::invalid_argument);
}

TEST_CASE("bernoulli_scaled collapses at p == 1") {
  DiscreteDistribution d = DiscreteDistribution::bernoulli_scaled(3.0, 1.0);
  REQUIRE(d.size() == 1);
  CHECK(d.atoms()[0].value == 3.0);
  CHECK(d == DiscreteDistribution::constant(3.0));
}

TEST_CASE("scaling and convolution") {
  DiscreteDistribution d = DiscreteDistribution::bernoulli_scaled(2.0, 0.5);
  DiscreteDistribution s = scale_distribution(d, 3.0);
  CHECK(s.max_value() == 6.0);
  CHECK(s.atoms()[1].prob == 0.5);
  CHECK(scale_distribution(d, 0.0) == DiscreteDistribution::constant(0.0));

  DiscreteDistribution sum = convolve({d, d}, 1024);
  REQUIRE(sum.size() == 3);  // 0, 2, 4
  CHECK(sum.atoms()[1].value == 2.0);
  CHECK(sum.atoms()[1].prob == 0.5);
  CHECK(sum.expectation() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(convolve(std::vector<DiscreteDistribution>(30, d), 1024), SupportTooLarge);
}

TEST_CASE("inverse-cdf sampling is deterministic and matches the law") {
  DiscreteDistribution d({{0.0, 0.5}, {1.0, 0.3}, {4.0, 0.2}});
  auto rng1 = make_rng(42), rng2 = make_rng(42);
  for (int k = 0; k < 100; ++k) CHECK(d.sample(rng1) == d.sample(rng2));

  auto rng = make_rng(7);
  RunningStats stats;
  for (int k = 0; k < 200000; ++k) stats.add(d.sample(rng));
  CHECK(std::abs(stats.mean() - d.expectation()) <= 4.0 * stats.std_error());
}

TEST_CASE("instance row and column views agree with the entry list") {
  // X0 = Y0 + 0.5 Y2, X1 = 2 Y1 + Y2
  LinearInstance inst(2, 3,
                      {{0, 0, 1.0}, {1, 1, 2.0}, {0, 2, 0.5}, {1, 2, 1.0}},
                      {DiscreteDistribution::constant(1.0),
                       DiscreteDistribution::constant(2.0),
                       DiscreteDistribution::constant(4.0)});
  CHECK(inst.row(0).size() == 2);
  CHECK(inst.col(2).size() == 2);
  CHECK(row_sparsity(inst) == 2);
  CHECK(col_sparsity(inst) == 2);
  std::vector<double> y = {1.0, 2.0, 4.0};
  CHECK(inst.row_value(0, y) == 3.0);
  CHECK(inst.row_value(1, y) == 8.0);
  auto x = inst.x_of(y);
  CHECK(x[0] == 3.0);
  CHECK(x[1] == 8.0);
}

TEST_CASE("instance constructor validation") {
  std::vector<DiscreteDistribution> f = {DiscreteDistribution::constant(1.0)};
  CHECK_THROWS_AS(LinearInstance(0, 1, {}, f), std::invalid_argument);
  CHECK_THROWS_AS(LinearInstance(1, 2, {{0, 0, 1.0}}, f), std::invalid_argument);
  CHECK_THROWS_AS(LinearInstance(1, 1, {{0, 1, 1.0}}, f), std::invalid_argument);
  CHECK_THROWS_AS(LinearInstance(1, 1, {{0, 0, -1.0}}, f), std::invalid_argument);
  CHECK_THROWS_AS(LinearInstance(1, 1, {{0, 0, 1.0}, {0, 0, 2.0}}, f), std::invalid_argument);
}

TEST_CASE("realize is stateless in (seed, index)") {
  LinearInstance inst = gen_random_sparse(6, 6, 3, 3, FeatureSpec{}, 99);
  Realization a = realize(inst, 5, 17);
  Realization b = realize(inst, 5, 17);
  CHECK(a.y == b.y);
  CHECK(a.x == b.x);
  Realization c = realize(inst, 5, 18);
  CHECK(a.y != c.y);
  for (std::size_t i = 0; i < inst.n(); ++i)
    CHECK(a.x[i] == inst.row_value(i, a.y));
}

TEST_CASE("tower generators hit every intended product bit-exactly") {
  for (double eps : {0.025, 0.1, 0.3}) {
    for (std::size_t c : {2ul, 3ul, 5ul, 8ul}) {
      LinearInstance two = gen_tower2(c, eps);
      LinearInstance full = gen_tower_general(c, eps);
      for (const LinearInstance* inst : {&two, &full}) {
        for (const auto& e : inst->entries()) {
          double vi = inst->feature(e.row).max_value();
          double vj = inst->feature(e.col).max_value();
          if (e.row == e.col)
            CHECK(e.coeff == 1.0);
          else
            CHECK(e.coeff * vj == vi);  // exact: the DP groups by equality
        }
        // Levels stay within rounding distance of the geometric ideal.
        for (std::size_t j = 0; j < c; ++j) {
          double p = std::pow(eps, static_cast<double>(j + 1));
          CHECK(inst->feature(j).atoms().back().prob == p);
          CHECK(inst->feature(j).max_value() * p == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
      CHECK(row_sparsity(two) == (c >= 2 ? 2 : 1));
      CHECK(col_sparsity(two) == (c >= 2 ? 2 : 1));
      CHECK(row_sparsity(full) == c);
      CHECK(col_sparsity(full) == c);
    }
  }
  CHECK_THROWS_AS(gen_tower2(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(gen_tower_general(0, 0.1), std::invalid_argument);
}

TEST_CASE("random sparse generator respects shape and sparsity targets") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    LinearInstance inst = gen_random_sparse(10, 8, 3, 4, FeatureSpec{}, seed);
    CHECK(inst.n() == 10);
    CHECK(inst.m() == 8);
    CHECK(row_sparsity(inst) <= 3);
    CHECK(col_sparsity(inst) <= 4);
    for (std::size_t i = 0; i < inst.n(); ++i) CHECK(!inst.row(i).empty());
    for (std::size_t j = 0; j < inst.m(); ++j) CHECK(!inst.col(j).empty());
  }
  LinearInstance a = gen_random_sparse(5, 5, 2, 2, FeatureSpec{}, 11);
  LinearInstance b = gen_random_sparse(5, 5, 2, 2, FeatureSpec{}, 11);
  CHECK(instance_to_json(a) == instance_to_json(b));
  CHECK_THROWS_AS(gen_random_sparse(10, 2, 1, 1, FeatureSpec{}, 1), std::invalid_argument);
}

TEST_CASE("unweighted generator builds 0/1 rows from sets") {
  LinearInstance inst = gen_unweighted(3, {{0, 1}, {2}}, FeatureSpec{}, 4);
  CHECK(inst.n() == 2);
  CHECK(inst.m() == 3);
  for (const auto& e : inst.entries()) CHECK(e.coeff == 1.0);
  CHECK(inst.row(0).size() == 2);
  CHECK_THROWS_AS(gen_unweighted(2, {{0, 5}}, FeatureSpec{}, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_unweighted(2, {{0, 0}}, FeatureSpec{}, 1), std::invalid_argument);
}

TEST_CASE("column normalization preserves the law of X") {
  LinearInstance inst = gen_random_sparse(6, 5, 3, 3, FeatureSpec{}, 21);
  LinearInstance norm = normalize_columns(inst);
  for (std::size_t j = 0; j < norm.m(); ++j) {
    double top = 0.0;
    for (const auto& [i, a] : norm.col(j)) top = std::max(top, a);
    CHECK(top == 1.0);
  }
  for (std::uint64_t k = 0; k < 20; ++k) {
    Realization a = realize(inst, 33, k), b = realize(norm, 33, k);
    for (std::size_t i = 0; i < inst.n(); ++i)
      CHECK(b.x[i] == doctest::Approx(a.x[i]).epsilon(1e-12));
  }
}

TEST_CASE("joint support size saturates at the cap") {
  LinearInstance inst = gen_tower_general(4, 0.1);
  CHECK(joint_support_size(inst, 1 << 20) == 16);
  CHECK(joint_support_size(inst, 8) == 9);
}

TEST_CASE("arrival marginals match the row convolutions") {
  LinearInstance inst = gen_tower2(2, 0.1);
  auto dists = arrival_distributions(inst, 1 << 20);
  REQUIRE(dists.size() == 2);
  // X0 = Y0 + c01 Y1 with both products pinned to 10
  CHECK(dists[0].max_value() == 20.0);
  CHECK(dists[0].expectation() == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(dists[1].expectation() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("instance json round-trips value-identically") {
  LinearInstance inst = gen_random_sparse(7, 6, 3, 2, FeatureSpec{.atoms = 3}, 55);
  Json j = instance_to_json(inst);
  LinearInstance back = instance_from_json(j);
  CHECK(back.n() == inst.n());
  CHECK(back.m() == inst.m());
  REQUIRE(back.entries().size() == inst.entries().size());
  for (std::size_t k = 0; k < inst.entries().size(); ++k) {
    CHECK(back.entries()[k].row == inst.entries()[k].row);
    CHECK(back.entries()[k].col == inst.entries()[k].col);
    CHECK(back.entries()[k].coeff == inst.entries()[k].coeff);
  }
  for (std::size_t jj = 0; jj < inst.m(); ++jj) CHECK(back.feature(jj) == inst.feature(jj));

  Estimate e{1.2345678901234567, 0.001, 777, false};
  Estimate e2 = estimate_from_json(estimate_to_json(e));
  CHECK(e2.mean == e.mean);
  CHECK(e2.std_error == e.std_error);
  CHECK(e2.n == e.n);
  CHECK(e2.exact == e.exact);
}

TEST_CASE("permutation sampler draws permutations deterministically") {
  PermutationSampler s({5.0, 3.0, 1.0, 3.0});
  std::vector<double> a, b, c;
  s.draw(9, 0, a);
  s.draw(9, 0, b);
  s.draw(9, 1, c);
  CHECK(a == b);
  std::multiset<double> want = {5.0, 3.0, 1.0, 3.0};
  CHECK(std::multiset<double>(a.begin(), a.end()) == want);
  CHECK(std::multiset<double>(c.begin(), c.end()) == want);
  CHECK(*std::max_element(a.begin(), a.end()) == 5.0);
}

TEST_CASE("seed derivation separates tags and indices") {
  std::set<std::uint64_t> seen;
  for (auto tag : {SeedTag::trial, SeedTag::construction, SeedTag::partition, SeedTag::values,
                   SeedTag::discard, SeedTag::config, SeedTag::bucket_policy, SeedTag::z_draw,
                   SeedTag::estimate, SeedTag::retry})
    for (std::uint64_t idx = 0; idx < 16; ++idx) seen.insert(derive_seed(123, tag, idx));
  CHECK(seen.size() == 160);
  CHECK(derive_seed(1, SeedTag::trial, 0) != derive_seed(2, SeedTag::trial, 0));
}

TEST_CASE("feature spec draws valid features") {
  FeatureSpec spec{.atoms = 4, .value_min = 1.0, .value_max = 2.0, .prob_min = 0.2,
                   .prob_max = 0.4};
  auto rng = make_rng(3);
  for (int k = 0; k < 50; ++k) {
    DiscreteDistribution d = spec.make_feature(rng);
    CHECK(d.size() == 4);
    CHECK(d.min_value() == 0.0);
    CHECK(d.max_value() <= 2.0);
    double active = 1.0 - d.atoms()[0].prob;
    CHECK(active >= 0.2 - 1e-12);
    CHECK(active <= 0.4 + 1e-12);
    double c = spec.make_coefficient(rng);
    CHECK(c > 0.0);
    CHECK(c <= 1.0);
  }
}
