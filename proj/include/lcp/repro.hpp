#pragma once

#include "lcp/experiment.hpp"

namespace lcp {

// One measured-vs-bound comparison. margin is slack in the passing direction,
// so pass == (margin >= 0) for ">="/"<=" and margin > 0 for ">".
struct CheckRow {
  std::string id;
  double measured = 0.0;
  std::string relation;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRow> rows;
  bool pass = true;

  void add(CheckRow row);
  std::string csv() const;  // id,measured,relation,bound,margin,verdict,note
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

// Canned reproduction of one claim family; rows carry the measured values,
// bounds, and verdicts. Unknown names throw.
SuiteResult reproduce(const std::string& suite, std::uint64_t seed = 1,
                      const OracleConfig& cfg = {});

// Cross-check of the stopping-value oracles: backward induction against
// exhaustive policy enumeration, and the Monte Carlo evaluator against exact
// enumeration. Not one of the named suites; the acceptance gate calls it
// directly.
SuiteResult oracle_consistency(std::uint64_t seed = 1, const OracleConfig& cfg = {});

// Shared corpora. All instances enumerate exactly under default caps.
std::vector<LinearInstance> ratio_corpus(std::uint64_t seed);       // sparsity 1..5 mix
std::vector<LinearInstance> unweighted_corpus(std::uint64_t seed);  // ten 0/1 set systems
std::vector<LinearInstance> smoke_corpus(std::uint64_t seed);       // small mixed bag

}  // namespace lcp
