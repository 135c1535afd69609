#include "palintiple/digit_core.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace pal {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::BadParameters: return "bad-parameters";
    case Errc::LeadingZero: return "leading-zero";
    case Errc::NotAMultiple: return "not-a-multiple";
    case Errc::NonIntegralDigit: return "non-integral-digit";
    case Errc::DigitOutOfRange: return "digit-out-of-range";
    case Errc::CarryNotMultiple: return "carry-not-multiple";
    case Errc::InvalidRSequence: return "invalid-r-sequence";
    case Errc::NotDivisible: return "not-divisible";
    case Errc::CheckpointCorrupt: return "checkpoint-corrupt";
    case Errc::IoError: return "io-error";
  }
  return "unknown";
}

std::string_view class_name(PalintipleClass c) {
  switch (c) {
    case PalintipleClass::Symmetric: return "symmetric";
    case PalintipleClass::ShiftedSymmetric: return "shifted-symmetric";
    case PalintipleClass::Asymmetric: return "asymmetric";
  }
  return "unknown";
}

static void validate_digits(std::int64_t base, const std::vector<std::int64_t>& digits) {
  if (base <= 2) throw std::invalid_argument("digit string base must be > 2");
  if (digits.empty()) throw std::invalid_argument("digit string must be non-empty");
  for (std::int64_t d : digits) {
    if (d < 0 || d >= base) throw std::invalid_argument("digit out of range for base");
  }
}

DigitString DigitString::from_lsd(std::int64_t base, std::vector<std::int64_t> lsd) {
  validate_digits(base, lsd);
  return DigitString{base, std::move(lsd)};
}

DigitString DigitString::from_msd(std::int64_t base, std::vector<std::int64_t> msd) {
  validate_digits(base, msd);
  std::reverse(msd.begin(), msd.end());
  return DigitString{base, std::move(msd)};
}

std::string format_digits(const DigitString& d) {
  std::string out;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    if (!out.empty()) out.push_back('.');
    out += std::to_string(*it);
  }
  return out;
}

Result<DigitString> parse_digits(std::string_view text, std::int64_t base) {
  if (base <= 2) {
    return Error{Errc::BadParameters, "base must be > 2", -1};
  }
  if (text.empty()) {
    return Error{Errc::BadParameters, "empty digit string", -1};
  }
  std::vector<std::int64_t> msd;
  std::size_t pos = 0;
  std::int64_t token_index = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string_view token = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    if (token.empty()) {
      return Error{Errc::BadParameters, "empty digit token", token_index};
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
      return Error{Errc::BadParameters, "digit token is not a non-negative integer: '" + std::string(token) + "'",
                   token_index};
    }
    if (value >= base) {
      return Error{Errc::DigitOutOfRange,
                   "digit value " + std::to_string(value) + " not below base " + std::to_string(base), token_index};
    }
    msd.push_back(value);
    ++token_index;
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return DigitString::from_msd(base, std::move(msd));
}

std::optional<std::uint64_t> digit_string_value(const DigitString& d) {
  const auto ubase = static_cast<std::uint64_t>(d.base);
  std::uint64_t value = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    std::uint64_t shifted = 0, summed = 0;
    if (__builtin_mul_overflow(value, ubase, &shifted)) return std::nullopt;
    if (__builtin_add_overflow(shifted, static_cast<std::uint64_t>(*it), &summed)) return std::nullopt;
    value = summed;
  }
  return value;
}

DigitString reverse_digits(const DigitString& d) {
  DigitString out = d;
  std::reverse(out.digits.begin(), out.digits.end());
  return out;
}

CarrySequence CarrySequence::make(std::int64_t multiplier, std::vector<std::int64_t> carries) {
  if (multiplier < 2) throw std::invalid_argument("carry sequence multiplier must be >= 2");
  if (carries.size() < 2) throw std::invalid_argument("carry sequence needs at least c_0 and c_1");
  if (carries.front() != 0) throw std::invalid_argument("carry sequence must start with c_0 = 0");
  for (std::int64_t c : carries) {
    if (c < 0 || c > multiplier - 1) throw std::invalid_argument("carry exceeds multiplier - 1");
  }
  return CarrySequence{multiplier, std::move(carries)};
}

SchoolbookProduct schoolbook_multiply(const DigitString& x, std::int64_t multiplier) {
  if (multiplier <= 1 || multiplier >= x.base) {
    throw std::invalid_argument("schoolbook multiplier must satisfy 1 < n < base");
  }
  const std::int64_t b = x.base;
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> carries;
  out.reserve(x.digits.size() + 1);
  carries.reserve(x.digits.size() + 1);
  std::int64_t carry = 0;
  carries.push_back(0);  // c_0
  for (std::int64_t digit : x.digits) {
    const std::int64_t t = multiplier * digit + carry;
    out.push_back(t % b);
    carry = t / b;
    carries.push_back(carry);
  }
  if (carry > 0) out.push_back(carry);  // overflow digit; c_{k+1} stays recorded
  return SchoolbookProduct{DigitString::from_lsd(b, std::move(out)),
                           CarrySequence::make(multiplier, std::move(carries))};
}

PalintipleClass classify_carries(const CarrySequence& c) {
  const auto& cs = c.carries;
  const std::int64_t k = c.top_index();
  bool symmetric = true;
  for (std::int64_t j = 0; j <= k && symmetric; ++j) symmetric = cs[j] == cs[k - j];
  if (symmetric) return PalintipleClass::Symmetric;
  bool shifted = true;
  for (std::int64_t j = 0; j <= k && shifted; ++j) shifted = cs[j] == cs[k - j + 1];
  if (shifted) return PalintipleClass::ShiftedSymmetric;
  return PalintipleClass::Asymmetric;
}

Result<PalintipleRecord> verify_palintiple(const DigitString& d, std::int64_t multiplier) {
  if (d.base <= 2) {
    return Error{Errc::BadParameters, "base must be > 2", -1};
  }
  if (multiplier <= 1 || multiplier >= d.base) {
    return Error{Errc::BadParameters, "multiplier must satisfy 1 < n < base", -1};
  }
  if (d.digits.front() == 0 || d.digits.back() == 0) {
    return Error{Errc::LeadingZero, "palintiples may not start or end with digit 0", -1};
  }
  SchoolbookProduct prod = schoolbook_multiply(reverse_digits(d), multiplier);
  if (prod.product.digits != d.digits) {
    return Error{Errc::NotAMultiple,
                 "digits are not " + std::to_string(multiplier) + " times their reversal", -1};
  }
  PalintipleClass cls = classify_carries(prod.carries);
  return PalintipleRecord{multiplier, d, std::move(prod.carries), cls};
}

Result<DigitString> digits_from_carries(const CarrySequence& c, std::int64_t base) {
  const std::int64_t n = c.multiplier;
  if (base <= 2 || n <= 1 || n >= base) {
    return Error{Errc::BadParameters, "need base > 2 and 1 < n < base", -1};
  }
  const auto& cs = c.carries;
  const std::int64_t k = c.top_index();
  if (cs.back() != 0) {
    return Error{Errc::BadParameters, "carry sequence must end with c_{k+1} = 0", k + 1};
  }
  const std::int64_t m = n * n - 1;
  std::vector<std::int64_t> digits(static_cast<std::size_t>(k) + 1, 0);
  for (std::int64_t j = 0; j <= k; ++j) {
    const std::int64_t num = n * base * cs[k - j + 1] - n * cs[k - j] + base * cs[j + 1] - cs[j];
    if (num % m != 0) {
      return Error{Errc::NonIntegralDigit,
                   "carry combination at index " + std::to_string(j) + " is not divisible by n^2 - 1", j};
    }
    const std::int64_t digit = num / m;
    if (digit < 0 || digit >= base) {
      return Error{Errc::DigitOutOfRange, "digit " + std::to_string(digit) + " at index " + std::to_string(j), j};
    }
    digits[j] = digit;
  }
  if (digits.front() == 0 || digits.back() == 0) {
    return Error{Errc::LeadingZero, "reconstructed digits start or end with 0", -1};
  }
  return DigitString::from_lsd(base, std::move(digits));
}

PalintipleRecord concatenate(const PalintipleRecord& p, std::int64_t copies) {
  if (copies < 1) throw std::invalid_argument("concatenate needs copies >= 1");
  std::vector<std::int64_t> digits;
  digits.reserve(p.digits.digits.size() * static_cast<std::size_t>(copies));
  for (std::int64_t i = 0; i < copies; ++i) {
    digits.insert(digits.end(), p.digits.digits.begin(), p.digits.digits.end());
  }
  Result<PalintipleRecord> rec =
      verify_palintiple(DigitString::from_lsd(p.digits.base, std::move(digits)), p.multiplier);
  if (!rec.ok()) {
    throw std::logic_error("concatenation of a palintiple failed to verify: " + rec.error().message);
  }
  return std::move(rec).value();
}

}  // namespace pal
