#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace lcp {

// A point estimate of an expectation. exact == true means the value was
// obtained by full enumeration (std_error is 0 and n counts scenarios);
// otherwise n counts Monte Carlo samples.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  bool exact = false;

  static Estimate exact_value(double v, std::uint64_t scenarios = 1) {
    return Estimate{v, 0.0, scenarios, true};
  }
};

// Thrown when an exact computation would enumerate more scenarios than the
// configured cap. Callers should fall back to the Monte Carlo path.
class SupportTooLarge : public std::runtime_error {
 public:
  explicit SupportTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Caps and budgets for the exact/Monte Carlo oracle split.
struct OracleConfig {
  std::size_t enumeration_cap = std::size_t{1} << 20;
  std::size_t dp_cap = std::size_t{1} << 16;
  std::size_t mc_samples = 100000;  // fallback budget when enumeration is capped
  std::size_t threshold_candidate_cap = std::size_t{1} << 14;
};

// Stream tags for hierarchical seed derivation. Every consumer of randomness
// derives its own seed from (master, tag, index) so draws are stateless and
// schedule-independent.
enum class SeedTag : std::uint64_t {
  trial = 1,
  construction = 2,
  partition = 3,
  values = 4,
  discard = 5,
  config = 6,
  bucket_policy = 7,
  z_draw = 8,
  estimate = 9,
  retry = 10,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace detail

inline std::uint64_t derive_seed(std::uint64_t base, SeedTag tag, std::uint64_t index = 0) {
  std::uint64_t s = detail::splitmix64(base ^ detail::splitmix64(static_cast<std::uint64_t>(tag)));
  return detail::splitmix64(s ^ detail::splitmix64(index));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Uniform in [0, 1) from the top 53 bits; avoids the rounding-to-1.0 corner
// of the standard real distributions.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_below(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Welford accumulator; add() order is fixed by the caller so results are
// run-invariant.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }
  Estimate estimate() const { return Estimate{mean_, std_error(), n_, false}; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

}  // namespace lcp
