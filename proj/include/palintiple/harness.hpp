#pragma once

// Bounded empirical checks of the classification claims. Every check
// enumerates verified palintiples up to a digit bound, records violations as
// counterexamples, and reports a verdict that is pure data: nothing here
// assumes the claim under test.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "palintiple/digit_core.hpp"

namespace pal {

// One recorded violation (or side observation) with enough context to
// reproduce it by hand.
struct Counterexample {
  std::int64_t n = 0;
  std::int64_t base = 0;
  std::string digits;                 // most-significant-first "." form
  std::vector<std::int64_t> carries;  // c_0..c_{k+1}
  std::int64_t failing_index = -1;    // offending position, -1 if whole-instance
  std::string detail;

  bool operator==(const Counterexample&) const = default;
};

struct ConjectureReport {
  std::string conjecture;
  std::int64_t b_max = 0;
  std::int64_t d_max = 0;
  std::int64_t n = 0;        // nonzero only for per-pair checks
  std::int64_t checked = 0;  // instances the property was evaluated on
  std::vector<Counterexample> counterexamples;
  // Findings that do not violate the property under test but belong next to
  // it in the record (see check_shifted_constant_carries).
  std::vector<Counterexample> observations;
  std::string note;  // meaning of the observations when any exist

  bool counterexample_found() const { return !counterexamples.empty(); }
  std::string_view verdict() const {
    return counterexample_found() ? "counterexample-found" : "no-counterexample";
  }
};

void to_json(nlohmann::ordered_json& j, const Counterexample& c);
void to_json(nlohmann::ordered_json& j, const ConjectureReport& r);

// Every symmetric palintiple with base <= b_max and <= d_max digits has all
// carries divisible by n-1.
ConjectureReport check_conjecture1(std::int64_t b_max, std::int64_t d_max);

// Symmetric palintiples occur exactly for pairs with (n+1) | b: no enumerated
// symmetric instance in a non-divisible pair and no non-symmetric instance in
// a divisible pair.
ConjectureReport check_corollary2(std::int64_t b_max, std::int64_t d_max);

// All enumerated palintiples of one (n, b) pair share a single carry class.
ConjectureReport check_pal_type(std::int64_t b_max, std::int64_t d_max);

// Interior-carry rigidity for shifted-symmetric palintiples: every interior
// carry c_1..c_k lies in {0} union congruence_solutions(n, b). Instances
// whose interior carries are not all equal (digit-block concatenations such
// as 3.1.3.1 in base 5 produce them) satisfy the rigidity property and are
// reported as observations, not counterexamples.
ConjectureReport check_shifted_constant_carries(std::int64_t b_max, std::int64_t d_max);

// Bidirectional generator check for one pair with (n+1) | b: per digit count
// m <= d_max the bit-sequence generator produces exactly the enumerated
// symmetric palintiples of m digits, and recover_r_sequence round-trips every
// one of them through generate_symmetric.
ConjectureReport check_reg1_generator(std::int64_t n, std::int64_t b, std::int64_t d_max);

// The four candidate equivalent conditions for one (n, b) pair, evaluated on
// all palintiples of <= d_max digits. The universally quantified conditions
// (1) and (3) are nullopt ("vacuous") when no palintiple exists within the
// bound; consistent means every non-vacuous value agrees.
struct EquivalenceReport {
  std::int64_t n = 0;
  std::int64_t base = 0;
  std::int64_t d_max = 0;
  std::int64_t instances = 0;
  std::optional<bool> all_symmetric;       // (1) every palintiple is symmetric
  bool graph_1089 = false;                 // (2) trimmed graph is 1089-type
  std::optional<bool> carries_structured;  // (3) carries divisible by n-1, top carry zero
  bool divides = false;                    // (4) (n+1) | b
  bool consistent = true;

  bool operator==(const EquivalenceReport&) const = default;
};

void to_json(nlohmann::ordered_json& j, const EquivalenceReport& r);

EquivalenceReport check_equivalences(std::int64_t n, std::int64_t b, std::int64_t d_max);

}  // namespace pal
