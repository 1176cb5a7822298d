#include <doctest.h>

#include "chebprime/family.hpp"
#include "oracle.hpp"

using namespace chebprime;
using namespace chebprime::family;

namespace {

bool claims_prime(const Verdict& v) { return v.passed(); }

}  // namespace

TEST_CASE("targets") {
  CHECK(family_target(Mersenne{7}) == 127);
  CHECK(family_target(Wagstaff{5}) == 11);
  CHECK(family_target(GenMersenne{3, 5}) == 121);
  CHECK(family_target(GenWagstaff{2, 5}) == 11);
  CHECK(family_target(ThreeTimesPow{3, -1}) == 23);
  CHECK(family_target(Cubic{3, 1}) == 7);
  CHECK(family_target(Cubic{3, -1}) == 13);
  CHECK(family_target(Riesel{5, 18}) == 1310719);
  CHECK(family_target(TwelveQ{5, 1}) == 61);
  CHECK(family_target(Proth{Int(5), 3}) == 41);
  CHECK(family_target(Fermat{4}) == 65537);
  CHECK(family_name(Riesel{5, 2}) == "riesel");
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(family_target(Wagstaff{2}), std::invalid_argument);
  CHECK_THROWS_AS(family_target(Riesel{5, 3}), std::invalid_argument);
  CHECK_THROWS_AS(family_target(Riesel{6, 4}), std::invalid_argument);
  CHECK_THROWS_AS(family_target(Riesel{25, 4}), std::invalid_argument);
  CHECK_THROWS_AS(family_target(TwelveQ{4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(family_target(Proth{Int(2), 3}), std::invalid_argument);
  CHECK_THROWS_AS(family_target(Fermat{1}), std::invalid_argument);
  CHECK_THROWS_AS(family_target(Cubic{3, 0}), std::invalid_argument);
}

TEST_CASE("base override must carry the expected symbols") {
  FamilyOptions opt;
  opt.base = Int(3);
  CHECK_THROWS_AS(family_test(Mersenne{7}, opt), PreconditionError);
}

TEST_CASE("Mersenne verdicts match the oracle") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
    const Verdict v = family_test(Mersenne{p});
    const bool prime = oracle::is_prime(family_target(Mersenne{p}));
    CHECK(claims_prime(v) == prime);
    if (prime) CHECK(v.status == VerdictStatus::ProvedPrime);
  }
}

TEST_CASE("Wagstaff, GenMersenne and GenWagstaff never reject primes") {
  for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    const Int n = family_target(Wagstaff{p});
    const Verdict v = family_test(Wagstaff{p});
    if (oracle::is_prime(n)) CHECK(v.passed());
    if (v.status == VerdictStatus::ProvedComposite) CHECK_FALSE(oracle::is_prime(n));
  }
  for (std::int64_t q : {2, 3, 4, 5, 6, 7, 10}) {
    for (std::uint64_t p : {3, 5, 7, 11}) {
      for (bool wag : {false, true}) {
        const FamilySpec spec = wag ? FamilySpec{GenWagstaff{q, p}} : FamilySpec{GenMersenne{q, p}};
        Int n;
        try {
          n = family_target(spec);
        } catch (const std::invalid_argument&) {
          continue;
        }
        if (mpz_sizeinbase(n.get_mpz_t(), 2) > 40) continue;
        Verdict v;
        try {
          v = family_test(spec);
        } catch (const PreconditionError&) {
          continue;
        }
        const bool prime = oracle::is_prime(n);
        if (prime) CHECK(v.passed());
        if (v.status == VerdictStatus::ProvedComposite) CHECK_FALSE(prime);
      }
    }
  }
}

TEST_CASE("three-times-power and cubic families") {
  for (std::uint64_t n = 2; n < 30; ++n) {
    for (int sign : {-1, 1}) {
      Int N;
      try {
        N = family_target(ThreeTimesPow{n, sign});
      } catch (const std::invalid_argument&) {
        continue;
      }
      const Verdict v = family_test(ThreeTimesPow{n, sign});
      if (oracle::is_prime(N)) CHECK(v.passed());
      if (v.status == VerdictStatus::ProvedComposite) CHECK_FALSE(oracle::is_prime(N));
    }
  }
  const Verdict c = family_test(Cubic{3, 1});
  CHECK(*c.certificate.sequence_value == 5);
  const Verdict d = family_test(ThreeTimesPow{3, -1});
  CHECK(*d.certificate.sequence_value == 10);
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19}) {
    for (int sign : {-1, 1}) {
      const Int N = family_target(Cubic{p, sign});
      const Verdict v = family_test(Cubic{p, sign});
      if (oracle::is_prime(N)) CHECK(v.passed());
      if (v.status == VerdictStatus::ProvedComposite) CHECK_FALSE(oracle::is_prime(N));
    }
  }
}

TEST_CASE("Fermat numbers") {
  for (std::uint64_t n : {2, 3, 4}) CHECK(family_test(Fermat{n}).status == VerdictStatus::ProvedPrime);
  for (std::uint64_t n : {5, 6}) CHECK(family_test(Fermat{n}).status == VerdictStatus::ProvedComposite);
}

TEST_CASE("Riesel r = 5 necessity agrees with the oracle") {
  for (std::uint64_t n = 2; n <= 30; n += 2) {
    const Int N = family_target(Riesel{5, n});
    const Verdict v = family_test(Riesel{5, n});
    CHECK(v.passed() == oracle::is_prime(N));
  }
}

TEST_CASE("twelveq necessity agrees with the oracle") {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const Int N = family_target(TwelveQ{5, n});
    const Verdict v = family_test(TwelveQ{5, n});
    CHECK(v.passed() == oracle::is_prime(N));
  }
}

TEST_CASE("sufficiency never proves a composite prime") {
  FamilyOptions opt;
  opt.sufficiency = true;
  for (std::uint64_t n = 2; n <= 30; n += 2) {
    const Verdict v = family_test(Riesel{5, n}, opt);
    if (v.status == VerdictStatus::ProvedPrime) CHECK(oracle::is_prime(family_target(Riesel{5, n})));
  }
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const Verdict v = family_test(TwelveQ{5, n}, opt);
    if (v.status == VerdictStatus::ProvedPrime) CHECK(oracle::is_prime(family_target(TwelveQ{5, n})));
  }
}
