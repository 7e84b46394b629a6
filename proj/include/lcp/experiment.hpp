#pragma once

#include "lcp/generators.hpp"
#include "lcp/multi_item.hpp"

namespace lcp {

// First-order delta-method std error of bench.mean / alg.mean, treating the
// two estimates as independent.
double ratio_std_error(const Estimate& bench, const Estimate& alg);

struct ExperimentSpec {
  std::string algo = "col-sparse";
  std::size_t r = 1;
  std::size_t num_samples = 10000;  // Monte Carlo trials when enumeration is out
  std::size_t constructions = 200;  // outer draws for randomized constructions
  std::uint64_t seed = 1;
  std::string oracle_mode = "auto";  // "exact" | "mc" | "auto"
  double epsilon = 0.5;              // bucket ladder parameter
  double eps_prime = 0.9;            // group partition parameter
  double tau = std::numeric_limits<double>::quiet_NaN();  // fixed threshold; NaN = search
  OracleConfig oracle;
};

const std::vector<std::string>& registered_algorithms();

struct ExperimentReport {
  std::string algo;
  Estimate alg;
  Estimate benchmark;  // E[sum of top-r X]
  std::optional<Estimate> online_opt;
  double ratio = 0.0;      // benchmark.mean / alg.mean
  double ratio_se = 0.0;
  Json params;             // resolved knobs (r, seed, samples, mode, ...)
  Json detail;             // construction/config/transcript evidence
  double wall_seconds = 0.0;  // not serialized; reports must be bit-stable

  Json to_json() const;
  std::string csv() const;  // one-row summary table
};

// Evaluates the named algorithm against the prophet benchmark. Exact
// enumeration is used whenever the mode and support caps allow, Monte Carlo
// otherwise; randomized constructions average construction draws in an outer
// loop.
ExperimentReport run_experiment(const LinearInstance& inst, const ExperimentSpec& spec);

struct ThresholdScan {
  std::vector<double> taus;
  std::vector<Estimate> values;
  std::string csv() const;  // tau,value,std_error,n,exact
};

// One exact row per achievable threshold (the full response curve).
ThresholdScan scan_thresholds(const LinearInstance& inst, const OracleConfig& cfg = {});
// One row per requested tau; exact when the support fits, else MC.
ThresholdScan scan_thresholds(const LinearInstance& inst, const std::vector<double>& taus,
                              std::size_t num_samples, std::uint64_t seed,
                              const OracleConfig& cfg = {});

}  // namespace lcp
