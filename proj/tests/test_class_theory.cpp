#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <numeric>
#include <vector>

#include "palintiple/class_theory.hpp"
#include "palintiple/digit_core.hpp"

using namespace pal;

TEST_CASE("pair classification follows the divisor conditions") {
  CHECK(pair_class(9, 10).value() == PairClass::SymmetricClass);
  CHECK(pair_class(4, 10).value() == PairClass::SymmetricClass);
  CHECK(pair_class(2, 5).value() == PairClass::ShiftedSymmetricClass);
  CHECK(pair_class(3, 7).value() == PairClass::ShiftedSymmetricClass);
  CHECK(pair_class(5, 8).value() == PairClass::AsymmetricCandidate);
  CHECK(pair_class(106, 420).value() == PairClass::AsymmetricCandidate);
  CHECK(pair_class(3, 10).value() == PairClass::AsymmetricCandidate);

  CHECK(pair_class(1, 10).error().code == Errc::BadParameters);
  CHECK(pair_class(10, 10).error().code == Errc::BadParameters);
  CHECK(pair_class(2, 2).error().code == Errc::BadParameters);
}

TEST_CASE("congruence solutions are the multiples of m/gcd inside the carry range") {
  CHECK(congruence_solutions(2, 5) == std::vector<std::int64_t>{1});
  CHECK(congruence_solutions(9, 10).empty());
  CHECK(congruence_solutions(4, 13).empty());
  CHECK(congruence_solutions(3, 7) == std::vector<std::int64_t>{2});
  CHECK(congruence_solutions(3, 11) == std::vector<std::int64_t>{1, 2});
  SUBCASE("nonempty exactly when gcd(b-n, n^2-1) >= n+1") {
    for (std::int64_t b = 3; b <= 40; ++b) {
      for (std::int64_t n = 2; n < b; ++n) {
        const bool big_gcd = std::gcd(b - n, n * n - 1) >= n + 1;
        CHECK(!congruence_solutions(n, b).empty() == big_gcd);
        for (std::int64_t c : congruence_solutions(n, b)) {
          CHECK(((b - n) * c) % (n * n - 1) == 0);
          CHECK(c >= 1);
          CHECK(c <= n - 1);
        }
      }
    }
  }
  CHECK_THROWS_AS(congruence_solutions(1, 5), std::invalid_argument);
}

TEST_CASE("shifted-symmetric construction produces the known base-5 family") {
  CHECK(format_digits(build_shifted_symmetric(2, 5, 1, 2).digits) == "3.1");
  CHECK(format_digits(build_shifted_symmetric(2, 5, 1, 3).digits) == "3.4.1");
  CHECK(format_digits(build_shifted_symmetric(2, 5, 1, 5).digits) == "3.4.4.4.1");
  SUBCASE("records verify, classify shifted, and carry the constant interior") {
    for (std::int64_t len = 2; len <= 8; ++len) {
      const PalintipleRecord rec = build_shifted_symmetric(2, 5, 1, len);
      CHECK(rec.cls == PalintipleClass::ShiftedSymmetric);
      const auto& cs = rec.carries.carries;
      for (std::int64_t j = 1; j <= rec.digits.top_index(); ++j) CHECK(cs[j] == 1);
    }
  }
  SUBCASE("every solution of every pair builds a verified two-digit palintiple") {
    for (std::int64_t b = 4; b <= 30; ++b) {
      for (std::int64_t n = 2; n < b; ++n) {
        for (std::int64_t c : congruence_solutions(n, b)) {
          const PalintipleRecord rec = build_shifted_symmetric(n, b, c, 2);
          CHECK(rec.cls == PalintipleClass::ShiftedSymmetric);
          CHECK(rec.digits.digits.front() == (b - n) * c / (n * n - 1));
          CHECK(rec.digits.digits.back() == (n * b - 1) * c / (n * n - 1));
        }
      }
    }
  }
  CHECK_THROWS_AS(build_shifted_symmetric(2, 5, 2, 2), std::invalid_argument);  // not a solution
  CHECK_THROWS_AS(build_shifted_symmetric(9, 10, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_shifted_symmetric(2, 5, 1, 1), std::invalid_argument);
}

TEST_CASE("bit-sequence structure predicate") {
  CHECK(r_sequence_valid(RSequence{{0, 1, 1, 0}}));
  CHECK(r_sequence_valid(RSequence{{0, 1, 1, 1, 0}}));
  CHECK(r_sequence_valid(RSequence{{0, 1, 1, 0, 0, 1, 1, 0}}));
  CHECK(!r_sequence_valid(RSequence{{0, 1, 0}}));        // isolated interior one
  CHECK(!r_sequence_valid(RSequence{{0, 1, 0, 1, 0}}));  // isolated interior zero and ones
  CHECK(!r_sequence_valid(RSequence{{1, 1, 1, 0}}));     // r_0 must be 0
  CHECK(!r_sequence_valid(RSequence{{0, 1, 1, 1}}));     // r_k must be 0
  CHECK(!r_sequence_valid(RSequence{{0, 1, 0, 1, 1, 0}}));  // not a palindrome
  CHECK(!r_sequence_valid(RSequence{{0, 1, 2, 1, 0}}));     // bits only
  CHECK(!r_sequence_valid(RSequence{{}}));
}

TEST_CASE("enumerating bit sequences matches a direct filter over all masks") {
  CHECK(enumerate_r_sequences(2).empty());
  CHECK(enumerate_r_sequences(3) == std::vector<RSequence>{RSequence{{0, 1, 1, 0}}});
  CHECK(enumerate_r_sequences(4) == std::vector<RSequence>{RSequence{{0, 1, 1, 1, 0}}});
  SUBCASE("k = 7 admits the concatenation pattern") {
    const std::vector<RSequence> rs = enumerate_r_sequences(7);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0] == RSequence{{0, 1, 1, 0, 0, 1, 1, 0}});
    CHECK(rs[1] == RSequence{{0, 1, 1, 1, 1, 1, 1, 0}});
  }
  SUBCASE("agrees with brute force over every bit vector") {
    for (std::int64_t k = 1; k <= 12; ++k) {
      std::vector<RSequence> expected;
      for (std::uint64_t mask = 0; mask < (1ull << (k + 1)); ++mask) {
        RSequence r;
        for (std::int64_t j = 0; j <= k; ++j) r.bits.push_back((mask >> j) & 1 ? 1 : 0);
        if (r_sequence_valid(r)) expected.push_back(std::move(r));
      }
      std::sort(expected.begin(), expected.end(),
                [](const RSequence& a, const RSequence& b) { return a.bits < b.bits; });
      CHECK(enumerate_r_sequences(k) == expected);
    }
  }
  CHECK_THROWS_AS(enumerate_r_sequences(0), std::invalid_argument);
}

TEST_CASE("symmetric generator reproduces the worked examples") {
  SUBCASE("(9, 10) with the four-digit sequence gives 9801") {
    const Result<PalintipleRecord> r = generate_symmetric(9, 10, RSequence{{0, 1, 1, 0}});
    REQUIRE(r.ok());
    CHECK(format_digits(r.value().digits) == "9.8.0.1");
    CHECK(r.value().carries.carries == std::vector<std::int64_t>{0, 8, 8, 0, 0});
  }
  SUBCASE("(4, 10) with the five-digit sequence gives 87912") {
    const Result<PalintipleRecord> r = generate_symmetric(4, 10, RSequence{{0, 1, 1, 1, 0}});
    REQUIRE(r.ok());
    CHECK(format_digits(r.value().digits) == "8.7.9.1.2");
  }
  SUBCASE("(2, 3) gives the smallest ternary palintiple") {
    const Result<PalintipleRecord> r = generate_symmetric(2, 3, RSequence{{0, 1, 1, 0}});
    REQUIRE(r.ok());
    CHECK(format_digits(r.value().digits) == "2.1.0.1");
  }
  SUBCASE("carries always come out as (n-1) times the bits") {
    for (const auto [n, b] : {std::pair<std::int64_t, std::int64_t>{9, 10},
                              {4, 10},
                              {2, 3},
                              {3, 8},
                              {5, 12},
                              {2, 30}}) {
      for (std::int64_t k = 3; k <= 9; ++k) {
        for (const RSequence& r : enumerate_r_sequences(k)) {
          const Result<PalintipleRecord> rec = generate_symmetric(n, b, r);
          REQUIRE(rec.ok());
          CHECK(rec.value().cls == PalintipleClass::Symmetric);
          const auto& cs = rec.value().carries.carries;
          for (std::int64_t j = 0; j <= k; ++j) CHECK(cs[j] == (n - 1) * r.bits[j]);
        }
      }
    }
  }
  CHECK(generate_symmetric(2, 5, RSequence{{0, 1, 1, 0}}).error().code == Errc::NotDivisible);
  CHECK(generate_symmetric(9, 10, RSequence{{0, 1, 0}}).error().code == Errc::InvalidRSequence);
  CHECK(generate_symmetric(1, 10, RSequence{{0, 1, 1, 0}}).error().code == Errc::BadParameters);
}

TEST_CASE("carry recovery inverts the generator") {
  SUBCASE("round trip over every generated record") {
    for (const auto [n, b] :
         {std::pair<std::int64_t, std::int64_t>{9, 10}, {4, 10}, {2, 3}, {3, 8}}) {
      for (std::int64_t k = 3; k <= 8; ++k) {
        for (const RSequence& r : enumerate_r_sequences(k)) {
          const PalintipleRecord rec = generate_symmetric(n, b, r).value();
          const Result<RSequence> back = recover_r_sequence(rec);
          REQUIRE(back.ok());
          CHECK(back.value() == r);
          CHECK(r_sequence_valid(back.value()));
        }
      }
    }
  }
  SUBCASE("a multiplier-2 shifted record recovers trivially but fails the structure test") {
    const PalintipleRecord rec = verify_palintiple(DigitString::from_msd(5, {3, 1}), 2).value();
    const Result<RSequence> back = recover_r_sequence(rec);
    REQUIRE(back.ok());
    CHECK(back.value() == RSequence{{0, 1}});
    CHECK(!r_sequence_valid(back.value()));
  }
  SUBCASE("carries that do not divide n-1 report the first failing index") {
    PalintipleRecord fake;
    fake.multiplier = 3;
    fake.digits = DigitString::from_msd(10, {1, 1, 1});
    fake.carries = CarrySequence::make(3, {0, 1, 0, 0});
    const Result<RSequence> back = recover_r_sequence(fake);
    REQUIRE(!back.ok());
    CHECK(back.error().code == Errc::CarryNotMultiple);
    CHECK(back.error().index == 1);
  }
}

TEST_CASE("multiplier choice for bases with composite successor") {
  CHECK(choose_n_for_composite(5) == 2);
  CHECK(choose_n_for_composite(8) == 2);
  CHECK(choose_n_for_composite(14) == 2);
  CHECK(choose_n_for_composite(24) == 4);
  CHECK(!choose_n_for_composite(10).has_value());
  CHECK(!choose_n_for_composite(12).has_value());
  SUBCASE("a multiplier exists exactly when b+1 is composite") {
    auto composite = [](std::int64_t m) {
      for (std::int64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return true;
      return false;
    };
    for (std::int64_t b = 4; b <= 300; ++b) {
      const std::optional<std::int64_t> n = choose_n_for_composite(b);
      CHECK(n.has_value() == composite(b + 1));
      if (n) {
        CHECK((b + 1) % (*n + 1) == 0);
        CHECK(*n > 1);
        CHECK(*n < b);
      }
    }
  }
  CHECK_THROWS_AS(choose_n_for_composite(3), std::invalid_argument);
}
