#include "lcp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace lcp {

double ratio_std_error(const Estimate& bench, const Estimate& alg) {
  if (alg.mean == 0.0) return 0.0;
  double a = bench.std_error / alg.mean;
  double b = bench.mean * alg.std_error / (alg.mean * alg.mean);
  return std::sqrt(a * a + b * b);
}

const std::vector<std::string>& registered_algorithms() {
  static const std::vector<std::string> names = {
      "fixed",  "half-max",         "median",           "col-sparse", "row-sparse",
      "unweighted", "bucket",       "col-sparse-multi", "row-sparse-multi", "small-r"};
  return names;
}

namespace {

double top_r_total(std::span<const double> x, std::size_t r) {
  std::vector<double> buf(x.begin(), x.end());
  if (r >= buf.size()) return std::accumulate(buf.begin(), buf.end(), 0.0);
  std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(r - 1), buf.end(),
                   std::greater<double>());
  double s = 0.0;
  for (std::size_t k = 0; k < r; ++k) s += buf[k];
  return s;
}

Estimate mc_prophet(const LinearInstance& inst, std::size_t r, std::size_t samples,
                    std::uint64_t seed) {
  RunningStats stats;
  for (std::size_t t = 0; t < samples; ++t)
    stats.add(top_r_total(realize(inst, seed, t).x, r));
  return stats.estimate();
}

Estimate evaluate_policy(const LinearInstance& inst, OnlinePolicy& policy, std::size_t r,
                         bool exact, std::size_t samples, std::uint64_t seed,
                         const OracleConfig& cfg) {
  if (exact) return exact_policy_value(inst, policy, r, cfg);
  InstanceSampler sampler(inst);
  return mc_value(sampler, policy, r, samples, seed);
}

// Distribution of max_i X_i over the joint support; smallest value with
// Pr[max <= v] >= 1/2.
double exact_median_of_max(const LinearInstance& inst, const OracleConfig& cfg) {
  std::vector<std::pair<double, double>> mass;
  for_each_scenario(inst, cfg.enumeration_cap,
                    [&](std::span<const double>, std::span<const double> x, double p) {
                      mass.emplace_back(*std::max_element(x.begin(), x.end()), p);
                    });
  std::sort(mass.begin(), mass.end());
  double cum = 0.0;
  for (const auto& [v, p] : mass) {
    cum += p;
    if (cum >= 0.5) return v;
  }
  return mass.back().first;
}

double mc_median_of_max(const LinearInstance& inst, std::size_t samples, std::uint64_t seed) {
  std::vector<double> maxima(samples);
  for (std::size_t t = 0; t < samples; ++t) {
    Realization real = realize(inst, seed, t);
    maxima[t] = *std::max_element(real.x.begin(), real.x.end());
  }
  std::sort(maxima.begin(), maxima.end());
  return maxima[(samples - 1) / 2];
}

// Outer loop over construction draws; the value of each drawn policy is exact
// when the support fits, else averaged over an inner slice of trials. All
// trial values pool into one estimate of E[ALG].
template <typename MakePolicy>
Estimate averaged_construction_value(const LinearInstance& inst, std::size_t r, bool exact,
                                     const ExperimentSpec& spec, const OracleConfig& cfg,
                                     MakePolicy&& make) {
  RunningStats stats;
  std::size_t outer = std::max<std::size_t>(1, spec.constructions);
  std::size_t inner = std::max<std::size_t>(1, spec.num_samples / outer);
  for (std::size_t k = 0; k < outer; ++k) {
    SingleItemPolicy pol = make(derive_seed(spec.seed, SeedTag::construction, k));
    if (exact) {
      stats.add(exact_policy_value(inst, pol.policy, r, cfg).mean);
    } else {
      std::uint64_t trial_seed = derive_seed(spec.seed, SeedTag::trial, k);
      for (std::size_t t = 0; t < inner; ++t) {
        Realization real = realize(inst, trial_seed, t);
        pol.policy.reset();
        stats.add(run_policy(pol.policy, real.x, r).total);
      }
    }
  }
  return stats.estimate();
}

}  // namespace

Json ExperimentReport::to_json() const {
  Json j;
  j["algo"] = algo;
  j["alg"] = estimate_to_json(alg);
  j["benchmark"] = estimate_to_json(benchmark);
  j["online_opt"] = online_opt ? estimate_to_json(*online_opt) : Json(nullptr);
  j["ratio"] = ratio;
  j["ratio_se"] = ratio_se;
  j["params"] = params;
  j["detail"] = detail;
  return j;
}

std::string ExperimentReport::csv() const {
  CsvWriter w({"algo", "r", "alg_mean", "alg_se", "bench_mean", "bench_se", "online_opt", "ratio",
               "ratio_se"});
  w.add_row({algo, std::to_string(params.value("r", std::size_t{1})), CsvWriter::format(alg.mean),
             CsvWriter::format(alg.std_error), CsvWriter::format(benchmark.mean),
             CsvWriter::format(benchmark.std_error),
             online_opt ? CsvWriter::format(online_opt->mean) : "",
             CsvWriter::format(ratio), CsvWriter::format(ratio_se)});
  return w.body();
}

ExperimentReport run_experiment(const LinearInstance& inst, const ExperimentSpec& spec) {
  auto t0 = std::chrono::steady_clock::now();
  const auto& names = registered_algorithms();
  if (std::find(names.begin(), names.end(), spec.algo) == names.end())
    throw std::invalid_argument("unknown algorithm: " + spec.algo);
  if (spec.num_samples == 0) throw std::invalid_argument("num_samples must be at least 1");
  if (spec.oracle_mode != "exact" && spec.oracle_mode != "mc" && spec.oracle_mode != "auto")
    throw std::invalid_argument("oracle mode must be exact, mc, or auto");

  const OracleConfig& cfg = spec.oracle;
  bool fits = joint_support_size(inst, cfg.enumeration_cap) <= cfg.enumeration_cap;
  bool exact = spec.oracle_mode == "exact" || (spec.oracle_mode == "auto" && fits);

  ExperimentReport rep;
  rep.algo = spec.algo;
  rep.benchmark = exact ? exact_prophet_value(inst, spec.r, cfg)
                        : mc_prophet(inst, spec.r, spec.num_samples,
                                     derive_seed(spec.seed, SeedTag::estimate, 0));

  if (spec.algo == "fixed") {
    double tau = spec.tau;
    bool searched = std::isnan(tau);
    if (searched) {
      if (!exact)
        throw std::invalid_argument("fixed-threshold search needs the exact oracle; pass tau");
      tau = best_fixed_threshold(inst, cfg).tau;
    }
    ThresholdPolicy pol(tau);
    rep.alg = evaluate_policy(inst, pol, spec.r, exact, spec.num_samples,
                              derive_seed(spec.seed, SeedTag::trial), cfg);
    rep.detail["tau"] = tau;
    rep.detail["searched"] = searched;
  } else if (spec.algo == "half-max") {
    Estimate max_x = exact ? exact_prophet_value(inst, 1, cfg)
                           : mc_prophet(inst, 1, spec.num_samples,
                                        derive_seed(spec.seed, SeedTag::estimate, 1));
    ThresholdPolicy pol(0.5 * max_x.mean);
    rep.alg = evaluate_policy(inst, pol, spec.r, exact, spec.num_samples,
                              derive_seed(spec.seed, SeedTag::trial), cfg);
    rep.detail["tau"] = pol.tau;
    rep.detail["max_x"] = estimate_to_json(max_x);
  } else if (spec.algo == "median") {
    double tau = exact ? exact_median_of_max(inst, cfg)
                       : mc_median_of_max(inst, spec.num_samples,
                                          derive_seed(spec.seed, SeedTag::estimate, 1));
    ThresholdPolicy pol(tau, /*strict=*/true);
    rep.alg = evaluate_policy(inst, pol, spec.r, exact, spec.num_samples,
                              derive_seed(spec.seed, SeedTag::trial), cfg);
    rep.detail["tau"] = tau;
    rep.detail["strict"] = true;
  } else if (spec.algo == "col-sparse") {
    rep.alg = averaged_construction_value(
        inst, spec.r, exact, spec, cfg,
        [&](std::uint64_t s) { return col_sparse_policy(inst, s, cfg); });
    rep.detail["plan"] =
        col_sparse_policy(inst, derive_seed(spec.seed, SeedTag::construction, 0), cfg)
            .plan.to_json();
    rep.detail["constructions"] = std::max<std::size_t>(1, spec.constructions);
  } else if (spec.algo == "row-sparse") {
    rep.alg = averaged_construction_value(
        inst, spec.r, exact, spec, cfg,
        [&](std::uint64_t s) { return row_sparse_policy(inst, s, cfg); });
    rep.detail["plan"] =
        row_sparse_policy(inst, derive_seed(spec.seed, SeedTag::construction, 0), cfg)
            .plan.to_json();
    rep.detail["constructions"] = std::max<std::size_t>(1, spec.constructions);
  } else if (spec.algo == "unweighted") {
    UnweightedPolicy pol = unweighted_policy(inst, cfg, spec.seed);
    rep.alg = evaluate_policy(inst, pol.policy, spec.r, exact, spec.num_samples,
                              derive_seed(spec.seed, SeedTag::trial), cfg);
    rep.detail["thresholds"] = pol.thresholds.to_json();
  } else if (spec.algo == "bucket") {
    if (col_sparsity(inst) > 1)
      throw std::invalid_argument(
          "bucket algorithm needs independent arrivals (column sparsity 1); "
          "use col-sparse-multi or small-r instead");
    auto z = arrival_distributions(inst, cfg.enumeration_cap);
    BucketConfig config =
        compute_bucket_config(z, spec.r, spec.epsilon, derive_seed(spec.seed, SeedTag::config),
                              cfg);
    RunningStats stats;
    SelectionTranscript last;
    for (std::size_t t = 0; t < spec.num_samples; ++t) {
      Realization real = realize(inst, spec.seed, t);
      last = run_bucket_policy(config, real.x, derive_seed(spec.seed, SeedTag::discard, t));
      stats.add(last.kept_value);
    }
    rep.alg = stats.estimate();
    rep.detail["config"] = config.to_json();
    rep.detail["last_transcript"] = last.to_json();
  } else if (spec.algo == "col-sparse-multi") {
    RunningStats stats;
    Json last;
    for (std::size_t t = 0; t < spec.num_samples; ++t) {
      MultiItemRun run = col_sparse_multi(inst, spec.r, spec.eps_prime, spec.epsilon,
                                          derive_seed(spec.seed, SeedTag::trial, t), cfg);
      stats.add(run.merged.kept_value);
      if (t + 1 == spec.num_samples) last = run.to_json();
    }
    rep.alg = stats.estimate();
    rep.detail["last_run"] = std::move(last);
  } else if (spec.algo == "row-sparse-multi") {
    RunningStats stats;
    Json last;
    for (std::size_t t = 0; t < spec.num_samples; ++t) {
      RowSparseMultiRun run =
          row_sparse_multi(inst, spec.r, derive_seed(spec.seed, SeedTag::trial, t), cfg);
      stats.add(run.transcript.kept_value);
      if (t + 1 == spec.num_samples) last = run.to_json();
    }
    rep.alg = stats.estimate();
    rep.detail["last_run"] = std::move(last);
  } else {  // small-r
    RunningStats stats;
    Json last;
    for (std::size_t t = 0; t < spec.num_samples; ++t) {
      SmallRRun run =
          small_r_col_sparse(inst, spec.r, derive_seed(spec.seed, SeedTag::trial, t), cfg);
      stats.add(run.transcript.kept_value);
      if (t + 1 == spec.num_samples) last = run.to_json();
    }
    rep.alg = stats.estimate();
    rep.detail["last_run"] = std::move(last);
  }

  if (spec.oracle_mode == "exact" ||
      (spec.oracle_mode == "auto" && joint_support_size(inst, 4096) <= 4096))
    rep.online_opt = exact_online_optimum(inst, spec.r, cfg);

  rep.ratio = rep.alg.mean > 0.0 ? rep.benchmark.mean / rep.alg.mean
                                 : std::numeric_limits<double>::infinity();
  rep.ratio_se = ratio_std_error(rep.benchmark, rep.alg);

  rep.params["algo"] = spec.algo;
  rep.params["r"] = spec.r;
  rep.params["seed"] = spec.seed;
  rep.params["num_samples"] = spec.num_samples;
  rep.params["constructions"] = spec.constructions;
  rep.params["oracle_mode"] = exact ? "exact" : "mc";
  rep.params["epsilon"] = spec.epsilon;
  rep.params["eps_prime"] = spec.eps_prime;
  rep.params["n"] = inst.n();
  rep.params["m"] = inst.m();
  rep.params["s_row"] = row_sparsity(inst);
  rep.params["s_col"] = col_sparsity(inst);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string ThresholdScan::csv() const {
  CsvWriter w({"tau", "value", "std_error", "n", "exact"});
  for (std::size_t k = 0; k < taus.size(); ++k)
    w.add_row({CsvWriter::format(taus[k]), CsvWriter::format(values[k].mean),
               CsvWriter::format(values[k].std_error), std::to_string(values[k].n),
               values[k].exact ? "1" : "0"});
  return w.body();
}

ThresholdScan scan_thresholds(const LinearInstance& inst, const OracleConfig& cfg) {
  ThresholdResponse resp = threshold_response(inst, cfg);
  std::uint64_t scenarios = joint_support_size(inst, cfg.enumeration_cap);
  ThresholdScan scan;
  scan.taus = resp.taus;
  scan.values.reserve(resp.values.size());
  for (double v : resp.values) scan.values.push_back(Estimate::exact_value(v, scenarios));
  return scan;
}

ThresholdScan scan_thresholds(const LinearInstance& inst, const std::vector<double>& taus,
                              std::size_t num_samples, std::uint64_t seed,
                              const OracleConfig& cfg) {
  ThresholdScan scan;
  scan.taus = taus;
  bool exact = joint_support_size(inst, cfg.enumeration_cap) <= cfg.enumeration_cap;
  InstanceSampler sampler(inst);
  for (std::size_t k = 0; k < taus.size(); ++k) {
    ThresholdPolicy pol(taus[k]);
    scan.values.push_back(exact ? exact_policy_value(inst, pol, 1, cfg)
                                : mc_value(sampler, pol, 1, num_samples,
                                           derive_seed(seed, SeedTag::trial, k)));
  }
  return scan;
}

}  // namespace lcp
