#include <doctest.h>

#include <numeric>

#include "chebprime/primality.hpp"
#include "oracle.hpp"

using namespace chebprime;

namespace {

Int u(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

}  // namespace

TEST_CASE("symbols are the two Jacobi symbols") {
  const auto s = symbols(Int(2), OddModulus(Int(31)));
  CHECK(s.epsilon == -1);
  CHECK(s.delta == -1);
  for (std::uint64_t q = 3; q < 2000; q += 2) {
    for (std::int64_t a = 2; a < 12; ++a) {
      const OddModulus m(u(q));
      if (std::gcd(static_cast<std::uint64_t>(a * a - 1), q) != 1) {
        CHECK_THROWS_AS(symbols(Int(static_cast<long>(a)), m), SharedFactorError);
        continue;
      }
      const auto sp = symbols(Int(static_cast<long>(a)), m);
      CHECK(sp.epsilon == oracle::jacobi(a * a - 1, q));
      CHECK(sp.delta == oracle::jacobi(2 * (a + 1), q));
    }
  }
}

TEST_CASE("every prime passes the base, strong, weak and mod-square tests") {
  for (std::uint64_t q = 3; q < 3000; q += 2) {
    if (!oracle::is_prime(q)) continue;
    const OddModulus m(u(q));
    for (long a = 2; a < 9; ++a) {
      if ((static_cast<std::uint64_t>(a) * a - 1) % q == 0) continue;
      const Verdict v = chebyshev_test(m, Int(a));
      REQUIRE(v.passed());
      CHECK(strong_test(m, Int(a)).verdict.passed());
      CHECK(weak_test(m, Int(a)));
      CHECK(mod_square_check(m, Int(a)));
    }
  }
}

TEST_CASE("base congruence agrees with the linear-recurrence oracle") {
  for (std::uint64_t q = 3; q < 1500; q += 2) {
    for (std::int64_t a = 2; a < 6; ++a) {
      if (std::gcd(static_cast<std::uint64_t>(a * a - 1), q) != 1) continue;
      const int eps = oracle::jacobi(a * a - 1, q);
      const int del = oracle::jacobi(2 * (a + 1), q);
      const std::uint64_t half = (q - eps) / 2;
      const std::uint64_t t = oracle::T_mod(a, half, q);
      const std::uint64_t uu = oracle::U_mod(a, static_cast<std::int64_t>(half) - 1, q);
      const bool expect = t == static_cast<std::uint64_t>(oracle::mod(del, q)) && uu == 0;
      const auto c = evaluate_congruence(Int(static_cast<long>(a)), OddModulus(u(q)));
      CHECK(c.passes() == expect);
    }
  }
}

TEST_CASE("composite verdicts are always correct") {
  for (std::uint64_t q = 3; q < 5000; q += 2) {
    const OddModulus m(u(q));
    for (long a = 2; a < 6; ++a) {
      const Verdict v = chebyshev_test(m, Int(a));
      if (v.status == VerdictStatus::ProvedComposite) REQUIRE_FALSE(oracle::is_prime(q));
      if (v.reason == Reason::SharedFactor) {
        REQUIRE(v.certificate.witness);
        CHECK(u(q) % *v.certificate.witness == 0);
      }
    }
  }
}

TEST_CASE("squares are rejected with their root") {
  const Verdict v = chebyshev_test(OddModulus(Int(10609)), Int(2));
  CHECK(v.status == VerdictStatus::ProvedComposite);
  CHECK(v.reason == Reason::PerfectSquare);
  CHECK(*v.certificate.witness == 103);
  CHECK(chebyshev_test(OddModulus(Int(9)), Int(2)).reason == Reason::PerfectSquare);
}

TEST_CASE("base equal to one mod Q is degenerate") {
  const Verdict v = chebyshev_test(OddModulus(Int(7)), Int(8));
  CHECK(v.status == VerdictStatus::Inconclusive);
  CHECK(v.reason == Reason::DegenerateBase);
}

TEST_CASE("strong test implies the base test and profile ends at delta") {
  for (std::uint64_t q = 5; q < 20000; q += 2) {
    const OddModulus m(u(q));
    if (std::gcd(q, std::uint64_t{3}) != 1) continue;
    const auto s = strong_test(m, Int(2));
    if (s.verdict.passed()) {
      CHECK(chebyshev_test(m, Int(2)).passed());
      REQUIRE_FALSE(s.profile.entries.empty());
      const int del = oracle::jacobi(6, q);
      CHECK(s.profile.entries.back() == (del == 1 ? Int(1) : u(q - 1)));
    }
  }
}

TEST_CASE("profile rule") {
  const Int q = 100;
  auto prof = [](std::vector<long> v) {
    Profile p;
    for (long x : v) p.entries.push_back(x < 0 ? Int(100 + x) : Int(x));
    return p;
  };
  CHECK_FALSE(profile_rule_violation(prof({1}), q));
  CHECK_FALSE(profile_rule_violation(prof({0, -1, 1, 1}), q));
  CHECK_FALSE(profile_rule_violation(prof({5, 0, -1}), q));
  CHECK(profile_rule_violation(prof({8416, 4431, 8861, 1}), Int(15505)) == 3u);
  CHECK(profile_rule_violation(prof({7, 1}), q) == 1u);
  CHECK(profile_rule_violation(prof({7, -1}), q) == 1u);
  CHECK(profile_rule_violation(prof({-1, -1}), q) == 1u);
  CHECK_FALSE(profile_rule_violation(prof({-1, 1}), q));
}

TEST_CASE("weak test") {
  CHECK_FALSE(weak_test(OddModulus(Int(9)), Int(2)));
  CHECK(weak_test(OddModulus(Int(13)), Int(5)));
}

TEST_CASE("mod-square strengthening on small primes") {
  CHECK(mod_square_check(OddModulus(Int(11)), Int(2)));
  CHECK(mod_square_check(OddModulus(Int(7)), Int(3)));
  CHECK(mod_square_check(OddModulus(Int(5)), Int(2)));
}

TEST_CASE("cyclotomic values") {
  CHECK(cyclotomic_value(2, 5) == 31);
  CHECK(cyclotomic_value(11, 3) == 133);
  CHECK(cyclotomic_value(-5, 3) == 21);
  CHECK(cyclotomic_value(-2, 5) == 11);
  CHECK(cyclotomic_value(3, 7) == 1093);
}

TEST_CASE("theorem check on prime cyclotomic values") {
  for (std::int64_t q : {-6, -5, -4, -3, -2, 2, 3, 4, 5, 6}) {
    for (std::uint64_t p : {3, 5, 7}) {
      const Int phi = cyclotomic_value(q, p);
      if (phi < 3 || !oracle::is_prime(phi)) continue;
      for (long a = 2; a <= 6; ++a) {
        if (gcd(Int(a * a - 1), phi) != 1) continue;
        const auto r = theorem1_check(q, p, Int(a));
        CHECK(r.holds());
      }
    }
  }
  const auto r = theorem1_check(11, 3, Int(2));
  CHECK(r.phi == 133);
  CHECK(r.epsilon == 1);
  CHECK(r.holds());
  CHECK_FALSE(chebyshev_test(OddModulus(Int(133)), Int(2)).passed());
}

TEST_CASE("order certification") {
  // 31 with a = 2: eps = -1, delta = -1, Q + 1 = 2^5.
  const Verdict v = order_certify(OddModulus(Int(31)), Int(2), {{Int(2), 5}});
  CHECK(v.status == VerdictStatus::ProvedPrime);
  CHECK(v.reason == Reason::OrderCertified);
  CHECK_THROWS_AS(order_certify(OddModulus(Int(31)), Int(2), {{Int(2), 4}}), std::invalid_argument);
  CHECK_THROWS_AS(order_certify(OddModulus(Int(23)), Int(2), {{Int(2), 3}, {Int(3), 1}}), PreconditionError);
  const Verdict c = order_certify(OddModulus(Int(35)), Int(3), {{Int(2), 2}, {Int(3), 2}});
  CHECK(c.status != VerdictStatus::ProvedPrime);
}

TEST_CASE("proth test") {
  const Verdict v = proth_test(Int(5), 3);
  CHECK(v.status == VerdictStatus::ProvedPrime);
  CHECK(*v.certificate.base == 12);
  CHECK(proth_test(Int(3), 2).status == VerdictStatus::ProvedPrime);  // 13
  CHECK(proth_test(Int(7), 3).status == VerdictStatus::ProvedComposite);  // 57
  CHECK_THROWS_AS(proth_test(Int(4), 3), std::invalid_argument);
  CHECK_THROWS_AS(proth_test(Int(9), 3), std::invalid_argument);
  const Verdict sq = proth_test(Int(1), 3);  // 9
  CHECK(sq.reason == Reason::PerfectSquare);
  for (std::uint64_t n = 1; n < 12; ++n) {
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); k += 2) {
      const std::uint64_t N = (k << n) + 1;
      const Verdict r = proth_test(u(k), n);
      if (r.status == VerdictStatus::Inconclusive) continue;
      CHECK((r.status == VerdictStatus::ProvedPrime) == oracle::is_prime(N));
    }
  }
}

TEST_CASE("verdict strings") {
  CHECK(to_string(VerdictStatus::ProvedPrime) == "proved-prime");
  CHECK(to_string(Reason::ProfileRule) == "profile-rule");
}
