#pragma once

// Digit-level arithmetic for palintiples: numbers p whose value is an integer
// multiple n of their own base-b digit reversal (e.g. 87912 = 4 * 21978).
// Everything here works on digit vectors directly; values are never
// materialized except through the explicit digit_string_value() convenience.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pal {

// Error codes shared across the library.
enum class Errc {
  BadParameters,
  LeadingZero,
  NotAMultiple,
  NonIntegralDigit,
  DigitOutOfRange,
  CarryNotMultiple,
  InvalidRSequence,
  NotDivisible,
  CheckpointCorrupt,
  IoError,
};

std::string_view errc_name(Errc code);

struct Error {
  Errc code;
  std::string message;
  std::int64_t index = -1;  // offending digit/carry index, -1 when not positional
};

// Minimal expected-style carrier: either a T or an Error.
template <typename T>
class Result {
 public:
  Result(T value) : data_(std::move(value)) {}
  Result(Error error) : data_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(data_); }
  T& value() & { return std::get<T>(data_); }
  T&& value() && { return std::get<T>(std::move(data_)); }

  const Error& error() const { return std::get<Error>(data_); }

 private:
  std::variant<T, Error> data_;
};

// Base-b digit vector stored least significant digit first: digits[j] is the
// coefficient of b^j. The text form is most-significant-first with values
// joined by '.', so 9801 in base 10 serializes as "9.8.0.1".
struct DigitString {
  std::int64_t base = 10;
  std::vector<std::int64_t> digits;

  // Both factories validate base > 2, non-empty digits, 0 <= digit < base and
  // throw std::invalid_argument otherwise (use parse_digits for user input).
  static DigitString from_lsd(std::int64_t base, std::vector<std::int64_t> lsd);
  static DigitString from_msd(std::int64_t base, std::vector<std::int64_t> msd);

  std::int64_t length() const { return static_cast<std::int64_t>(digits.size()); }
  std::int64_t top_index() const { return length() - 1; }  // index k of d_k

  bool operator==(const DigitString&) const = default;
};

std::string format_digits(const DigitString& d);
Result<DigitString> parse_digits(std::string_view text, std::int64_t base);

// The numeric value when it fits an unsigned 64-bit integer, otherwise nullopt.
std::optional<std::uint64_t> digit_string_value(const DigitString& d);

DigitString reverse_digits(const DigitString& d);

// Carries produced by the longhand product n * x for a (k+1)-digit x:
// carries holds c_0..c_{k+1} with c_0 = 0 always and every c_j <= n-1.
// c_{k+1} is zero exactly when the product kept the multiplicand's length,
// which is the boundary convention palintiple carries obey.
struct CarrySequence {
  std::int64_t multiplier = 2;  // n
  std::vector<std::int64_t> carries;

  static CarrySequence make(std::int64_t multiplier, std::vector<std::int64_t> carries);

  std::int64_t top_index() const { return static_cast<std::int64_t>(carries.size()) - 2; }  // k

  bool operator==(const CarrySequence&) const = default;
};

// Carry-pattern classes. A palintiple with carries c_0..c_{k+1} is Symmetric
// when c_j = c_{k-j} for all 0 <= j <= k, ShiftedSymmetric when
// c_j = c_{k-j+1} for all 0 <= j <= k, Asymmetric otherwise. The two patterns
// can only hold together when every carry is zero, which no palintiple
// attains, so the classes are disjoint on verified records; classify_carries
// checks the symmetric pattern first.
enum class PalintipleClass { Symmetric, ShiftedSymmetric, Asymmetric };

std::string_view class_name(PalintipleClass c);

// A verified palintiple: digits d_0..d_k of p, the multiplier n, the carries
// of n * reverse(p), and the carry class. Only verify_palintiple (and helpers
// that re-verify, like concatenate) produce these.
struct PalintipleRecord {
  std::int64_t multiplier = 2;
  DigitString digits;
  CarrySequence carries;
  PalintipleClass cls = PalintipleClass::Asymmetric;

  bool operator==(const PalintipleRecord&) const = default;
};

struct SchoolbookProduct {
  DigitString product;      // full product, possibly one digit longer than x
  CarrySequence carries;    // c_0..c_{k+1} relative to the multiplicand length
};

// Longhand multiplication n * x in base b. Requires 1 < n < base.
SchoolbookProduct schoolbook_multiply(const DigitString& x, std::int64_t multiplier);

// Checks p = n * reverse(p) digit-wise. Errors: BadParameters (base <= 2 or
// n outside (1, base)), LeadingZero (d_k = 0 or d_0 = 0), NotAMultiple.
Result<PalintipleRecord> verify_palintiple(const DigitString& d, std::int64_t multiplier);

// Reconstructs digits from carries via
//   d_j = (n*b*c_{k-j+1} - n*c_{k-j} + b*c_{j+1} - c_j) / (n^2 - 1),
// the closed form obtained by pairing the carry recurrence at positions j and
// k-j. Errors: NonIntegralDigit, DigitOutOfRange, LeadingZero, BadParameters.
Result<DigitString> digits_from_carries(const CarrySequence& c, std::int64_t base);

PalintipleClass classify_carries(const CarrySequence& c);

// Repeats the digit block of p `copies` times and re-verifies; the result is
// again a palintiple for the same multiplier (87128712 = 4 * 21782178).
PalintipleRecord concatenate(const PalintipleRecord& p, std::int64_t copies);

}  // namespace pal
