#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setpack/exact.hpp"
#include "setpack/instance.hpp"
#include "setpack/local_search.hpp"
#include "setpack/rational.hpp"

namespace setpack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCap = 3;

/// Parsed algorithm name, e.g. "local:2", "loglocal:1/2", "power:3/2:2".
struct Algorithm {
  enum class Kind { kExact, kGreedy, kLocal, kLogLocal, kWishful, kSquareImp, kPower, kRescaled };
  Kind kind = Kind::kExact;
  std::string name;
  std::size_t t = 0;           // local, power; talon bound for squareimp (0 = k)
  Rational epsilon;            // loglocal
  Rational alpha;              // power
};
Algorithm parse_algorithm(std::string_view text);

struct SolveOutcome {
  Packing packing;
  Rational value;
  std::size_t iterations = 0;
  std::uint64_t budget_spent = 0;
};

/// Runs one algorithm. Cardinality-only algorithms (local, loglocal) reject
/// weighted instances with InputError.
SolveOutcome run_algorithm(const Instance& instance, const Algorithm& algorithm,
                           std::uint64_t budget_limit = WorkBudget::kDefaultLimit,
                           std::size_t exact_cap = kDefaultExactCap);

struct Family {
  enum class Kind { kRandom, kProjective, kFile };
  Kind kind = Kind::kRandom;
  std::string label;
  std::size_t universe = 0, n = 0, k = 0;
  std::uint64_t first_seed = 0, last_seed = 0;
  std::optional<WeightRange> weights;
  std::uint64_t q = 0;
  std::string path;
};

struct BenchConfig {
  std::vector<Algorithm> algorithms;
  std::vector<Family> families;
  std::size_t exact_cap = kDefaultExactCap;
  bool lp_standard = false;
  bool lp_intersecting = false;
  std::uint64_t budget = WorkBudget::kDefaultLimit;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Relative file paths in `family = file path=...` resolve against base_dir.
BenchConfig parse_bench_config(std::string_view text, const std::string& base_dir = ".");

inline constexpr std::string_view kBenchHeader =
    "# setpack-bench v1\n"
    "family,seed,n,k,algorithm,status,value,exact_value,ratio,lp_standard_gap,"
    "lp_intersecting_gap,lp_int_over_value\n";

struct BenchResult {
  std::string csv;
  std::size_t rows = 0;
  std::size_t succeeded = 0;
  std::size_t cap_exceeded = 0;
};
BenchResult run_bench(const BenchConfig& config);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace setpack::cli
