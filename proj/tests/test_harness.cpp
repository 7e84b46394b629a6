#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lcp/repro.hpp"

using namespace lcp;

namespace {
LinearInstance diag3() {
  return LinearInstance(3, 3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}},
                        {DiscreteDistribution::bernoulli_scaled(4.0, 0.3),
                         DiscreteDistribution::bernoulli_scaled(7.0, 0.25),
                         DiscreteDistribution::bernoulli_scaled(11.0, 0.2)});
}
}  // namespace

TEST_CASE("ratio std error: exact estimates carry no noise") {
  Estimate bench = Estimate::exact_value(2.0, 4);
  Estimate alg = Estimate::exact_value(1.0, 4);
  CHECK(ratio_std_error(bench, alg) == 0.0);
  Estimate noisy{1.0, 0.1, 100, false};
  CHECK(ratio_std_error(noisy, alg) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(ratio_std_error(bench, Estimate{0.0, 0.0, 1, true}) == 0.0);
}

TEST_CASE("every registered algorithm runs on a fitting instance") {
  const auto& names = registered_algorithms();
  CHECK(names.size() == 10);
  LinearInstance tower = gen_tower2(2, 0.1);
  LinearInstance independent = diag3();
  LinearInstance unweighted =
      gen_unweighted(3, {{0}, {1}, {2}}, FeatureSpec{}, 7);
  LinearInstance crossed = gen_random_sparse(8, 8, 2, 2, FeatureSpec{}, 15);

  for (const std::string& algo : names) {
    ExperimentSpec spec;
    spec.algo = algo;
    spec.num_samples = 200;
    spec.constructions = 8;
    spec.r = algo == "col-sparse-multi" ? 4 : 2;
    const LinearInstance& inst = algo == "unweighted" ? unweighted
                                 : algo == "bucket"   ? independent
                                 : algo == "col-sparse-multi" || algo == "small-r" ||
                                         algo == "row-sparse-multi"
                                     ? crossed
                                     : tower;
    ExperimentReport rep = run_experiment(inst, spec);
    INFO(algo);
    CHECK(rep.algo == algo);
    CHECK(rep.alg.mean >= 0.0);
    CHECK(rep.benchmark.mean > 0.0);
    if (rep.alg.mean > 0.0)
      CHECK(rep.ratio == rep.benchmark.mean / rep.alg.mean);
    CHECK(rep.params["algo"] == algo);
    CHECK(rep.params["r"] == spec.r);
    CHECK(rep.params["seed"] == spec.seed);
    CHECK(rep.online_opt.has_value());  // all smoke instances enumerate

    Json j = rep.to_json();
    for (const char* key : {"algo", "alg", "benchmark", "ratio", "params", "detail"})
      CHECK(j.contains(key));
    std::string csv = rep.csv();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one row
  }
}

TEST_CASE("median rule on the two-level tower stops at zero") {
  ExperimentSpec spec;
  spec.algo = "median";
  ExperimentReport rep = run_experiment(gen_tower2(2, 0.1), spec);
  CHECK(rep.detail["tau"] == 0.0);  // Pr[max X == 0] is 0.891
  CHECK(rep.detail["strict"] == true);
  CHECK(rep.alg.mean == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(rep.benchmark.mean == doctest::Approx(1.99).epsilon(1e-12));
}

TEST_CASE("experiment validation and algorithm preconditions") {
  ExperimentSpec spec;
  spec.algo = "nope";
  CHECK_THROWS_AS(run_experiment(diag3(), spec), std::invalid_argument);

  spec.algo = "fixed";
  spec.num_samples = 0;
  CHECK_THROWS_AS(run_experiment(diag3(), spec), std::invalid_argument);
  spec.num_samples = 10;
  spec.oracle_mode = "sometimes";
  CHECK_THROWS_AS(run_experiment(diag3(), spec), std::invalid_argument);

  // Threshold search needs enumeration; forcing mc without tau must fail.
  spec.oracle_mode = "mc";
  CHECK_THROWS_AS(run_experiment(diag3(), spec), std::invalid_argument);
  spec.tau = 3.0;
  CHECK(run_experiment(diag3(), spec).alg.mean > 0.0);

  ExperimentSpec bucket;
  bucket.algo = "bucket";
  CHECK_THROWS_AS(run_experiment(gen_tower2(2, 0.1), bucket), std::invalid_argument);

  ExperimentSpec unw;
  unw.algo = "unweighted";
  CHECK_THROWS_AS(run_experiment(gen_tower2(2, 0.1), unw), std::invalid_argument);
}

TEST_CASE("reports replay bit-identically") {
  for (const char* algo : {"col-sparse", "bucket", "small-r"}) {
    ExperimentSpec spec;
    spec.algo = algo;
    spec.num_samples = 100;
    spec.constructions = 6;
    spec.r = 2;
    const LinearInstance inst = algo == std::string("bucket")
                                    ? diag3()
                                    : gen_random_sparse(6, 6, 2, 2, FeatureSpec{}, 29);
    std::string a = run_experiment(inst, spec).to_json().dump();
    std::string b = run_experiment(inst, spec).to_json().dump();
    INFO(algo);
    CHECK(a == b);
  }
}

TEST_CASE("threshold scans expose the exact response curve") {
  LinearInstance inst = gen_tower2(2, 0.1);
  ThresholdScan scan = scan_thresholds(inst);
  REQUIRE(!scan.taus.empty());
  CHECK(std::is_sorted(scan.taus.begin(), scan.taus.end()));
  double best = 0.0;
  for (const Estimate& v : scan.values) {
    CHECK(v.exact);
    best = std::max(best, v.mean);
  }
  CHECK(best == best_fixed_threshold(inst).value.mean);
  std::string csv = scan.csv();
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<std::ptrdiff_t>(scan.taus.size() + 1));

  ThresholdScan grid = scan_thresholds(inst, {0.0, 5.0, 15.0}, 1000, 3);
  REQUIRE(grid.values.size() == 3);
  CHECK(grid.values[0].mean == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(grid.values[1].mean == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("reproduction suites are named and dispatchable") {
  const auto& names = suite_names();
  CHECK(names.size() == 11);
  for (const char* expected :
       {"fixed-threshold-failure", "tower-hardness", "augmentation-single", "median-failure",
        "col-sparse-ratio", "row-sparse-construction", "multi-bucket-invariants", "multi-trend",
        "unweighted-ratio", "na-permutation", "small-r-ratio"})
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  CHECK_THROWS_AS(reproduce("not-a-suite"), std::invalid_argument);
}

TEST_CASE("a fast suite reports well-formed rows") {
  SuiteResult res = reproduce("na-permutation");
  CHECK(res.suite == "na-permutation");
  CHECK(res.pass);
  REQUIRE(!res.rows.empty());
  for (const CheckRow& row : res.rows) {
    CHECK(!row.id.empty());
    CHECK((row.relation == ">=" || row.relation == "<=" || row.relation == ">"));
    CHECK(row.pass);
  }
  std::string csv = res.csv();
  CHECK(csv.rfind("id,measured,relation,bound,margin,verdict,note", 0) == 0);
  Json j = res.to_json();
  CHECK(j["pass"] == true);
  CHECK(j["rows"].size() == res.rows.size());
}

TEST_CASE("tower hardness suite holds at desk scale") {
  SuiteResult res = reproduce("tower-hardness");
  CHECK(res.pass);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].measured == doctest::Approx(1.002).epsilon(1e-3));
}

TEST_CASE("csv writer formats doubles round-trip") {
  CsvWriter w({"a", "b"});
  w.add_row({CsvWriter::format(1.0 / 3.0), "x"});
  CHECK_THROWS_AS(w.add_row({"only-one"}), std::invalid_argument);
  double parsed = std::strtod(CsvWriter::format(1.0 / 3.0).c_str(), nullptr);
  CHECK(parsed == 1.0 / 3.0);

  std::string path = "/tmp/lcp_io_roundtrip.txt";
  write_text_file(path, w.body());
  CHECK(read_text_file(path) == w.body());
  std::remove(path.c_str());
}
