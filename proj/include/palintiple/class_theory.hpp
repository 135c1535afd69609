#pragma once

// Number-theoretic classification of (n, b) pairs and the two constructive
// generators: constant-carry shifted-symmetric palintiples from congruence
// solutions, and symmetric palintiples from palindromic bit sequences.

#include <cstdint>
#include <optional>
#include <vector>

#include "palintiple/digit_core.hpp"

namespace pal {

// Which carry class the divisor structure of (n, b) predicts:
//   SymmetricClass        iff (n+1) | b
//   ShiftedSymmetricClass iff gcd(b-n, n^2-1) >= n+1 (and not SymmetricClass)
//   AsymmetricCandidate   otherwise.
// The two divisor conditions are mutually exclusive, so the order above is a
// convention only for exhaustiveness, not a tie-break.
enum class PairClass { SymmetricClass, ShiftedSymmetricClass, AsymmetricCandidate };

std::string_view pair_class_name(PairClass c);

Result<PairClass> pair_class(std::int64_t n, std::int64_t b);

// All c in [1, n-1] with (n^2 - 1) | (b - n) c, ascending. Non-empty exactly
// when gcd(b-n, n^2-1) >= n+1; every solution is a multiple of
// (n^2 - 1) / gcd(b - n, n^2 - 1).
std::vector<std::int64_t> congruence_solutions(std::int64_t n, std::int64_t b);

// Builds the digit_count-digit shifted-symmetric palintiple whose interior
// carries are all equal to the congruence solution `carry`:
//   d_0 = (b-n)c/(n^2-1),  d_k = (nb-1)c/(n^2-1),  interior d_j = (b-1)c/(n-1).
// Preconditions (checked, std::invalid_argument): digit_count >= 2 and carry
// is a congruence solution for (n, b). The result always re-verifies.
PalintipleRecord build_shifted_symmetric(std::int64_t n, std::int64_t b, std::int64_t carry,
                                         std::int64_t digit_count);

// Palindromic bit sequence r_0..r_k driving the symmetric generator. A
// structurally valid sequence has r_0 = r_k = 0, r_1 = r_{k-1} = 1, is a
// palindrome, and has no isolated interior bit: for 0 < j < k,
// r_{j-1} = r_{j+1} = 1 forces r_j = 1 and r_{j-1} = r_{j+1} = 0 forces
// r_j = 0 (with r_{k+1} treated as 0). recover_r_sequence can also return
// structurally invalid bit vectors (e.g. for n = 2 shifted-symmetric records,
// where every carry divides n-1 = 1); r_sequence_valid tests structure.
struct RSequence {
  std::vector<int> bits;

  bool operator==(const RSequence&) const = default;
};

bool r_sequence_valid(const RSequence& r);

// Symmetric generator: with q = b/(n+1),
//   d_j = n*q*r_{k-j+1} + q*r_{j+1} - r_j,
// whose carries come out as c_j = (n-1) r_j. Errors: NotDivisible when
// (n+1) does not divide b, InvalidRSequence when r fails the structure above,
// BadParameters for n or b out of range.
Result<PalintipleRecord> generate_symmetric(std::int64_t n, std::int64_t b, const RSequence& r);

// Divides every carry c_0..c_k by n-1. Errors: CarryNotMultiple with the
// first failing index (for a symmetric record this would contradict the
// expectation that symmetric carries are multiples of n-1, so callers surface
// it loudly), InvalidRSequence if a quotient is not a bit (unreachable given
// the carry bound; kept as a guard). Structure is deliberately not enforced
// here: n = 2 records divide trivially and may yield non-palindromic bits.
Result<RSequence> recover_r_sequence(const PalintipleRecord& p);

// All structurally valid r sequences of length k+1, lexicographic by
// (r_0, ..., r_k). Empty for k < 3.
std::vector<RSequence> enumerate_r_sequences(std::int64_t k);

// Smallest n with 1 < n < b and (n+1) | (b+1); nullopt iff b+1 is prime.
// Requires b > 3. Feeds build_shifted_symmetric for every base whose
// successor is composite.
std::optional<std::int64_t> choose_n_for_composite(std::int64_t b);

}  // namespace pal
