#include <algorithm>
#include <cstdio>
#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "lcp/io.hpp"
#include "lcp/repro.hpp"

namespace {

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty())
    std::cout << body;
  else
    lcp::write_text_file(out_path, body);
}

lcp::LinearInstance load_instance(const std::string& path) {
  return lcp::instance_from_json(lcp::Json::parse(lcp::read_text_file(path)));
}

std::vector<std::vector<std::size_t>> nested_sets(std::size_t n) {
  std::vector<std::vector<std::size_t>> sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) sets[i].push_back(j);
  return sets;
}

int run_suites(const std::vector<std::string>& which, std::uint64_t seed,
               const std::string& out_path, const std::string& format) {
  std::vector<lcp::SuiteResult> results;
  for (const std::string& name : which) {
    lcp::SuiteResult res = name == "oracle-consistency" ? lcp::oracle_consistency(seed)
                                                        : lcp::reproduce(name, seed);
    for (const auto& row : res.rows)
      std::printf("%s  %s/%s  %.6g %s %.6g\n", row.pass ? "pass" : "FAIL", res.suite.c_str(),
                  row.id.c_str(), row.measured, row.relation.c_str(), row.bound);
    std::fflush(stdout);
    results.push_back(std::move(res));
  }
  bool all_pass = std::all_of(results.begin(), results.end(),
                              [](const lcp::SuiteResult& r) { return r.pass; });
  if (format == "csv") {
    lcp::CsvWriter w({"suite", "id", "measured", "relation", "bound", "margin", "verdict", "note"});
    for (const auto& res : results)
      for (const auto& row : res.rows)
        w.add_row({res.suite, row.id, lcp::CsvWriter::format(row.measured), row.relation,
                   lcp::CsvWriter::format(row.bound), lcp::CsvWriter::format(row.margin),
                   row.pass ? "pass" : "fail", row.note});
    if (!out_path.empty()) lcp::write_text_file(out_path, w.body());
  } else if (!out_path.empty()) {
    lcp::Json j = lcp::Json::array();
    for (const auto& res : results) j.push_back(res.to_json());
    lcp::write_text_file(out_path, j.dump(2) + "\n");
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "some checks FAILED");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lcp;

  CLI::App app{"workbench for prophet problems with linearly correlated values"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate an instance as JSON");
  std::string g_kind;
  std::size_t g_n = 8, g_m = 8, g_srow = 2, g_scol = 2;
  double g_eps = 0.1;
  std::uint64_t g_seed = 1;
  std::string g_out;
  gen->add_option("kind", g_kind, "instance family")
      ->required()
      ->check(CLI::IsMember({"tower2", "tower", "random", "unweighted-nested"}));
  gen->add_option("--n", g_n, "arrivals");
  gen->add_option("--m", g_m, "features (random family only)");
  gen->add_option("--s-row", g_srow, "row sparsity target (random)");
  gen->add_option("--s-col", g_scol, "column sparsity target (random)");
  gen->add_option("--epsilon", g_eps, "tower decay parameter");
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_option("--out", g_out, "output path (default stdout)");

  auto* run = app.add_subcommand("run", "evaluate an algorithm against the prophet benchmark");
  std::string r_path, r_out, r_format = "json";
  ExperimentSpec spec;
  run->add_option("instance", r_path, "instance JSON file")->required();
  run->add_option("--algo", spec.algo, "algorithm name")
      ->check(CLI::IsMember(registered_algorithms()));
  run->add_option("--r", spec.r, "selection budget");
  run->add_option("--samples", spec.num_samples, "Monte Carlo trials");
  run->add_option("--constructions", spec.constructions, "construction draws to average");
  run->add_option("--seed", spec.seed, "master seed");
  run->add_option("--oracle-mode", spec.oracle_mode, "exact | mc | auto")
      ->check(CLI::IsMember({"exact", "mc", "auto"}));
  run->add_option("--epsilon", spec.epsilon, "bucket ladder parameter");
  run->add_option("--eps-prime", spec.eps_prime, "group partition parameter in (0, 1]");
  run->add_option("--tau", spec.tau, "fixed threshold (fixed algo; default searches)");
  run->add_option("--out", r_out, "output path (default stdout)");
  run->add_option("--format", r_format)->check(CLI::IsMember({"json", "csv"}));

  auto* scan = app.add_subcommand("scan", "sweep fixed thresholds");
  std::string s_path, s_out, s_format = "csv", s_mode = "achievable";
  double s_min = 0.0, s_max = 1.0;
  std::size_t s_steps = 50, s_samples = 20000;
  std::uint64_t s_seed = 1;
  scan->add_option("instance", s_path, "instance JSON file")->required();
  scan->add_option("--mode", s_mode, "achievable: every exact step; grid: tau-min..tau-max")
      ->check(CLI::IsMember({"achievable", "grid"}));
  scan->add_option("--tau-min", s_min);
  scan->add_option("--tau-max", s_max);
  scan->add_option("--steps", s_steps);
  scan->add_option("--samples", s_samples, "Monte Carlo trials per grid point");
  scan->add_option("--seed", s_seed);
  scan->add_option("--out", s_out, "output path (default stdout)");
  scan->add_option("--format", s_format)->check(CLI::IsMember({"json", "csv"}));

  auto* rep = app.add_subcommand("repro", "replay a claim suite and check its bounds");
  std::string rep_suite = "all", rep_out, rep_format = "json";
  std::uint64_t rep_seed = 1;
  std::vector<std::string> rep_choices = suite_names();
  rep_choices.push_back("oracle-consistency");
  rep_choices.push_back("all");
  rep->add_option("suite", rep_suite, "suite name or 'all'")->check(CLI::IsMember(rep_choices));
  rep->add_option("--seed", rep_seed);
  rep->add_option("--out", rep_out, "write rows to a file as well");
  rep->add_option("--format", rep_format)->check(CLI::IsMember({"json", "csv"}));

  auto* orc = app.add_subcommand("oracle", "benchmark values for one instance");
  std::string o_path, o_out;
  std::size_t o_r = 1, o_samples = 100000;
  std::uint64_t o_seed = 1;
  orc->add_option("instance", o_path, "instance JSON file")->required();
  orc->add_option("--r", o_r, "selection budget");
  orc->add_option("--samples", o_samples, "Monte Carlo trials when enumeration is out");
  orc->add_option("--seed", o_seed);
  orc->add_option("--out", o_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      LinearInstance inst = [&] {
        if (g_kind == "tower2") return gen_tower2(g_n, g_eps);
        if (g_kind == "tower") return gen_tower_general(g_n, g_eps);
        if (g_kind == "unweighted-nested")
          return gen_unweighted(g_n, nested_sets(g_n), FeatureSpec{}, g_seed);
        return gen_random_sparse(g_n, g_m, g_srow, g_scol, FeatureSpec{}, g_seed);
      }();
      emit(g_out, instance_to_json(inst).dump(2) + "\n");
      return 0;
    }

    if (*run) {
      LinearInstance inst = load_instance(r_path);
      ExperimentReport report = run_experiment(inst, spec);
      if (report.detail.contains("config") &&
          report.detail["config"].value("guarantee_applies", true) == false)
        std::fprintf(stderr,
                     "note: eps = %g is below the smallest proven-guarantee eps %g for r = %zu; "
                     "the measured ratio is evidence, not a certificate\n",
                     spec.epsilon, report.detail["config"].value("eps_guarantee_bound", 0.0),
                     spec.r);
      emit(r_out, r_format == "csv" ? report.csv() : report.to_json().dump(2) + "\n");
      return 0;
    }

    if (*scan) {
      LinearInstance inst = load_instance(s_path);
      ThresholdScan result;
      if (s_mode == "achievable") {
        result = scan_thresholds(inst);
      } else {
        if (!(s_max >= s_min)) throw std::invalid_argument("need tau-max >= tau-min");
        std::vector<double> taus;
        std::size_t steps = std::max<std::size_t>(s_steps, 1);
        for (std::size_t k = 0; k < steps; ++k)
          taus.push_back(steps == 1 ? s_min
                                    : s_min + (s_max - s_min) * static_cast<double>(k) /
                                                  static_cast<double>(steps - 1));
        result = scan_thresholds(inst, taus, s_samples, s_seed);
      }
      if (s_format == "json") {
        Json j = Json::array();
        for (std::size_t k = 0; k < result.taus.size(); ++k) {
          Json row;
          row["tau"] = result.taus[k];
          row["value"] = estimate_to_json(result.values[k]);
          j.push_back(std::move(row));
        }
        emit(s_out, j.dump(2) + "\n");
      } else {
        emit(s_out, result.csv());
      }
      return 0;
    }

    if (*rep) {
      std::vector<std::string> which;
      if (rep_suite == "all") {
        which = suite_names();
        which.push_back("oracle-consistency");
      } else {
        which.push_back(rep_suite);
      }
      return run_suites(which, rep_seed, rep_out, rep_format);
    }

    if (*orc) {
      LinearInstance inst = load_instance(o_path);
      OracleConfig cfg;
      Json j;
      j["n"] = inst.n();
      j["m"] = inst.m();
      j["s_row"] = row_sparsity(inst);
      j["s_col"] = col_sparsity(inst);
      std::size_t support = joint_support_size(inst, cfg.enumeration_cap);
      bool exact = support <= cfg.enumeration_cap;
      j["joint_support"] = exact ? Json(support) : Json("over cap");
      if (exact) {
        j["prophet"] = estimate_to_json(exact_prophet_value(inst, o_r, cfg));
      } else {
        RunningStats stats;
        std::vector<double> x;
        for (std::size_t t = 0; t < o_samples; ++t) {
          x = realize(inst, derive_seed(o_seed, SeedTag::estimate, 0), t).x;
          if (o_r < x.size())
            std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(o_r - 1), x.end(),
                             std::greater<double>());
          stats.add(std::accumulate(x.begin(), x.begin() + std::min(o_r, x.size()), 0.0));
        }
        j["prophet"] = estimate_to_json(stats.estimate());
      }
      try {
        j["online_opt"] = estimate_to_json(exact_online_optimum(inst, o_r, cfg));
      } catch (const SupportTooLarge&) {
        j["online_opt"] = "over cap";
      }
      if (exact && o_r == 1) {
        BestThreshold best = best_fixed_threshold(inst, cfg);
        j["best_fixed"] = {{"tau", best.tau}, {"value", estimate_to_json(best.value)}};
      }
      emit(o_out, j.dump(2) + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
