#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace purelab::verify {

// Pinned thresholds.
inline constexpr double kLlpSeconds = 1.0;
inline constexpr double kOracleSeconds = 300.0;
inline constexpr double kEffectiveSeconds = 300.0;
inline constexpr double kChainSeconds = 10.0;
inline constexpr std::size_t kOracleMaxSize = 5;
inline constexpr std::size_t kSplitMaxSize = 6;
inline constexpr std::size_t kEffectiveSquares = 500;
inline constexpr std::size_t kEffectiveMaxSize = 8;
inline constexpr std::size_t kPathInstances = 500;
inline constexpr std::size_t kPathMaxSize = 8;
inline constexpr std::size_t kChainDepth = 4;
inline constexpr std::size_t kFactInstances = 300;
inline constexpr std::size_t kFactMaxSize = 6;
inline constexpr std::size_t kPushoutInstances = 300;
inline constexpr std::size_t kAmalgamationSquares = 200;
inline constexpr std::size_t kAmalgamationVars = 4;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::size_t instances = 0;
  double seconds = 0;
  std::string detail;  // first failure, or a summary
};

CriterionResult check_llp_fixtures();
CriterionResult check_oracle_equivalence();
CriterionResult check_span_pure_iff_split();
CriterionResult check_pullbacks_effective(std::uint64_t seed);
CriterionResult check_path_bound(std::uint64_t seed);
CriterionResult check_chain_construction();
CriterionResult check_pure_mono_facts(std::uint64_t seed);
CriterionResult check_pushout_is_pullback(std::uint64_t seed);
CriterionResult check_amalgamation(std::uint64_t seed);

/// All nine criteria in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

/// "PASS  3  title  (n instances, t s)  detail"
std::string format_line(const CriterionResult& r);

}  // namespace purelab::verify
