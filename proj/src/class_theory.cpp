#include "palintiple/class_theory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pal {

std::string_view pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::SymmetricClass: return "symmetric-class";
    case PairClass::ShiftedSymmetricClass: return "shifted-symmetric-class";
    case PairClass::AsymmetricCandidate: return "asymmetric-candidate";
  }
  return "unknown";
}

Result<PairClass> pair_class(std::int64_t n, std::int64_t b) {
  if (b <= 2 || n <= 1 || n >= b) {
    return Error{Errc::BadParameters, "need base > 2 and 1 < n < base", -1};
  }
  if (b % (n + 1) == 0) return PairClass::SymmetricClass;
  if (std::gcd(b - n, n * n - 1) >= n + 1) return PairClass::ShiftedSymmetricClass;
  return PairClass::AsymmetricCandidate;
}

std::vector<std::int64_t> congruence_solutions(std::int64_t n, std::int64_t b) {
  if (b <= 2 || n <= 1 || n >= b) {
    throw std::invalid_argument("congruence_solutions needs base > 2 and 1 < n < base");
  }
  const std::int64_t m = n * n - 1;
  // Solutions are exactly the multiples of m / gcd(b-n, m) in [1, n-1].
  const std::int64_t step = m / std::gcd(b - n, m);
  std::vector<std::int64_t> out;
  for (std::int64_t c = step; c <= n - 1; c += step) out.push_back(c);
  return out;
}

PalintipleRecord build_shifted_symmetric(std::int64_t n, std::int64_t b, std::int64_t carry,
                                         std::int64_t digit_count) {
  if (digit_count < 2) throw std::invalid_argument("shifted-symmetric construction needs >= 2 digits");
  const std::int64_t m = n * n - 1;
  if (b <= 2 || n <= 1 || n >= b || carry < 1 || carry > n - 1 || ((b - n) * carry) % m != 0) {
    throw std::invalid_argument("carry must be a congruence solution for (n, b)");
  }
  const std::int64_t k = digit_count - 1;
  std::vector<std::int64_t> digits(static_cast<std::size_t>(digit_count), (b - 1) * carry / (n - 1));
  digits.front() = (b - n) * carry / m;
  digits.back() = (n * b - 1) * carry / m;
  Result<PalintipleRecord> rec = verify_palintiple(DigitString::from_lsd(b, std::move(digits)), n);
  if (!rec.ok()) {
    throw std::logic_error("shifted-symmetric construction failed to verify: " + rec.error().message);
  }
  PalintipleRecord record = std::move(rec).value();
  // The interior carries of the constructed record are the chosen solution.
  for (std::int64_t j = 1; j <= k; ++j) {
    if (record.carries.carries[j] != carry) {
      throw std::logic_error("shifted-symmetric construction produced unexpected carries");
    }
  }
  return record;
}

bool r_sequence_valid(const RSequence& r) {
  const std::int64_t k = static_cast<std::int64_t>(r.bits.size()) - 1;
  if (k < 3) return false;
  for (int bit : r.bits) {
    if (bit != 0 && bit != 1) return false;
  }
  if (r.bits[0] != 0 || r.bits[k] != 0) return false;
  if (r.bits[1] != 1 || r.bits[k - 1] != 1) return false;
  for (std::int64_t j = 0; j <= k / 2; ++j) {
    if (r.bits[j] != r.bits[k - j]) return false;
  }
  for (std::int64_t j = 1; j < k; ++j) {
    const int prev = r.bits[j - 1];
    const int next = j + 1 <= k ? r.bits[j + 1] : 0;
    if (prev == 1 && next == 1 && r.bits[j] != 1) return false;
    if (prev == 0 && next == 0 && r.bits[j] != 0) return false;
  }
  return true;
}

Result<PalintipleRecord> generate_symmetric(std::int64_t n, std::int64_t b, const RSequence& r) {
  if (b <= 2 || n <= 1 || n >= b) {
    return Error{Errc::BadParameters, "need base > 2 and 1 < n < base", -1};
  }
  if (b % (n + 1) != 0) {
    return Error{Errc::NotDivisible, "n + 1 = " + std::to_string(n + 1) + " does not divide base " + std::to_string(b),
                 -1};
  }
  if (!r_sequence_valid(r)) {
    return Error{Errc::InvalidRSequence, "bit sequence fails the palindromic run structure", -1};
  }
  const std::int64_t q = b / (n + 1);
  const std::int64_t k = static_cast<std::int64_t>(r.bits.size()) - 1;
  auto bit = [&](std::int64_t j) -> std::int64_t { return j <= k ? r.bits[j] : 0; };
  std::vector<std::int64_t> digits(static_cast<std::size_t>(k) + 1, 0);
  for (std::int64_t j = 0; j <= k; ++j) {
    digits[j] = n * q * bit(k - j + 1) + q * bit(j + 1) - bit(j);
  }
  Result<PalintipleRecord> rec = verify_palintiple(DigitString::from_lsd(b, std::move(digits)), n);
  if (!rec.ok()) {
    throw std::logic_error("symmetric generator output failed to verify: " + rec.error().message);
  }
  PalintipleRecord record = std::move(rec).value();
  // By construction the carries are (n-1) r_j; anything else is a bug because
  // carries are determined by the digits.
  for (std::int64_t j = 0; j <= k + 1; ++j) {
    if (record.carries.carries[j] != (n - 1) * bit(j)) {
      throw std::logic_error("symmetric generator produced unexpected carries");
    }
  }
  return record;
}

Result<RSequence> recover_r_sequence(const PalintipleRecord& p) {
  const std::int64_t n = p.multiplier;
  const std::int64_t k = p.carries.top_index();
  RSequence r;
  r.bits.reserve(static_cast<std::size_t>(k) + 1);
  for (std::int64_t j = 0; j <= k; ++j) {
    const std::int64_t c = p.carries.carries[j];
    if (c % (n - 1) != 0) {
      return Error{Errc::CarryNotMultiple,
                   "carry " + std::to_string(c) + " at index " + std::to_string(j) + " is not a multiple of n - 1",
                   j};
    }
    const std::int64_t bit = c / (n - 1);
    if (bit != 0 && bit != 1) {
      return Error{Errc::InvalidRSequence, "carry quotient at index " + std::to_string(j) + " is not a bit", j};
    }
    r.bits.push_back(static_cast<int>(bit));
  }
  return r;
}

std::vector<RSequence> enumerate_r_sequences(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("enumerate_r_sequences needs k >= 1");
  std::vector<RSequence> out;
  if (k < 3) return out;
  // r_0, r_1, r_{k-1}, r_k are forced and the palindrome mirrors the rest, so
  // only positions 2..k/2 are free.
  const std::int64_t lo = 2;
  const std::int64_t hi = k / 2;
  const std::int64_t free_count = hi >= lo ? hi - lo + 1 : 0;
  for (std::uint64_t mask = 0; mask < (1ULL << free_count); ++mask) {
    RSequence r;
    r.bits.assign(static_cast<std::size_t>(k) + 1, 0);
    r.bits[1] = 1;
    r.bits[k - 1] = 1;
    for (std::int64_t i = 0; i < free_count; ++i) {
      const int bit = static_cast<int>((mask >> i) & 1);
      r.bits[lo + i] = bit;
      r.bits[k - (lo + i)] = bit;
    }
    if (r_sequence_valid(r)) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const RSequence& x, const RSequence& y) { return x.bits < y.bits; });
  return out;
}

std::optional<std::int64_t> choose_n_for_composite(std::int64_t b) {
  if (b <= 3) throw std::invalid_argument("choose_n_for_composite needs b > 3");
  for (std::int64_t n = 2; n < b; ++n) {
    if ((b + 1) % (n + 1) == 0) return n;
  }
  return std::nullopt;
}

}  // namespace pal
