#include <doctest.h>

#include <random>

#include "chebprime/chebkernel.hpp"
#include "oracle.hpp"

using namespace chebprime;
using Elem = UnitRing::Elem;

namespace {

Int u(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

}  // namespace

TEST_CASE("T and U agree with the exact recurrences") {
  for (long a = -5; a <= 7; ++a) {
    for (unsigned n = 0; n < 60; ++n) {
      for (unsigned long q : {3UL, 11UL, 101UL, 1000003UL}) {
        const OddModulus m{Int(q)};
        Int t = oracle::T_exact(a, n) % q;
        if (t < 0) t += q;
        Int uu = oracle::U_exact(a, n) % q;
        if (uu < 0) uu += q;
        REQUIRE(cheb_T(Int(a), literal(static_cast<long>(n)), m) == t);
        REQUIRE(cheb_U(Int(a), literal(static_cast<long>(n)), m) == uu);
      }
    }
  }
}

TEST_CASE("frozen small values") {
  const OddModulus big(Int(1000000007));
  CHECK(cheb_U(Int(2), literal(2), big) == 15);
  CHECK(cheb_U(Int(2), literal(4), big) == 209);
  CHECK(cheb_U(Int(3), literal(2), big) == 35);
  CHECK(cheb_U(Int(2), literal(5), big) == 780);
  const auto w2 = unit_pow(Int(2), literal(2), OddModulus(Int(11)));
  CHECK(w2.t == 7);
  CHECK(w2.u == 4);
  const auto w5 = unit_pow(Int(2), literal(5), OddModulus(Int(11)));
  CHECK(w5.t == 10);
  CHECK(w5.u == 0);
  const auto wm2 = unit_pow(Int(2), literal(-2), OddModulus(Int(101)));
  CHECK(wm2.t == 7);
  CHECK(wm2.u == 97);
  CHECK(cheb_T(Int(2), literal(-32), OddModulus(Int(11))) == 7);
}

TEST_CASE("negative indices follow T_{-n} = T_n and U_{-n} = -U_{n-2}") {
  const OddModulus m(Int(10007));
  for (long a = 2; a < 6; ++a) {
    for (long n = 0; n < 40; ++n) {
      CHECK(cheb_T(Int(a), literal(-n), m) == cheb_T(Int(a), literal(n), m));
      if (n >= 2) {
        Int neg = m.value() - cheb_U(Int(a), literal(n - 2), m);
        m.reduce(neg);
        CHECK(cheb_U(Int(a), literal(-n), m) == neg);
      }
    }
    CHECK(cheb_U(Int(a), literal(-1), m) == 0);
  }
}

TEST_CASE("Pell invariant t^2 - (a^2-1) u^2 = 1") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Int q = u(rng() % 1000000) * 2 + 3;
    const OddModulus m(q);
    const Int a = u(rng() % 1000) + 2;
    const UnitRing ring(a, m);
    const Int e = u(rng());
    const Elem x = ring.pow(ring.generator(), e);
    Int pell = x.t * x.t - (a * a - 1) * x.u * x.u - 1;
    m.reduce(pell);
    CHECK(pell == 0);
  }
}

TEST_CASE("homomorphism, conjugate and doubling laws") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    const Int q = u(rng() % 100000) * 2 + 3;
    const OddModulus m(q);
    const Int a = u(rng() % 50) + 2;
    const UnitRing ring(a, m);
    const Int e1 = u(rng() % 100000);
    const Int e2 = u(rng() % 100000);
    const Elem w = ring.generator();
    CHECK(ring.mul(ring.pow(w, e1), ring.pow(w, e2)) == ring.pow(w, Int(e1 + e2)));
    CHECK(ring.pow(ring.pow(w, e1), e2) == ring.pow(w, Int(e1 * e2)));
    CHECK(ring.is_one(ring.mul(ring.pow(w, e1), ring.conjugate(ring.pow(w, e1)))));
    CHECK(ring.pow_signed(w, Int(-e1)) == ring.conjugate(ring.pow(w, e1)));
    const Elem x = ring.pow(w, e1);
    Int doubled = 2 * x.t * x.t - 1;
    m.reduce(doubled);
    CHECK(ring.pow(w, Int(2 * e1)).t == doubled);
    CHECK(ring.sqr(x) == ring.mul(x, x));
  }
}

TEST_CASE("composition matches binary powering") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Int q = u(rng() % 100000) * 2 + 3;
    const OddModulus m(q);
    const Int a = u(rng() % 50) + 2;
    const std::int64_t base = static_cast<std::int64_t>(rng() % 9) + 2;
    const std::int64_t sq = (rng() % 2) ? base : -base;
    const std::uint64_t steps = rng() % 12;
    Int expect_exp = 1;
    for (std::uint64_t s = 0; s < steps; ++s) expect_exp *= base;
    CHECK(compose_iterate(a, sq, steps, m) == cheb_T(a, literal(expect_exp), m));
    const Int x = u(rng() % 100000);
    const Int k = u(rng() % 1000);
    const Int n = u(rng() % 1000);
    CHECK(cheb_T_ladder(cheb_T_ladder(x, k, m), n, m) == cheb_T_ladder(x, Int(k * n), m));
  }
  CHECK(compose_iterate(Int(2), 3, 4, OddModulus(Int(7))) == 2);
  CHECK_THROWS_AS(compose_iterate(Int(2), 1, 4, OddModulus(Int(7))), std::invalid_argument);
}

TEST_CASE("structured exponents evaluate like their literal values") {
  const OddModulus m(Int(1000003));
  for (long a = 2; a < 5; ++a) {
    for (std::int64_t q : {-6, -3, -2, 2, 3, 5}) {
      for (std::uint64_t p = 0; p < 8; ++p) {
        for (std::int64_t c : {-70, -3, 0, 1, 2, 65}) {
          const ExponentForm f = exponent::PowerOffset{q, p, c};
          const Int n = exponent_value(f);
          REQUIRE(unit_pow(Int(a), f, m).t == unit_pow(Int(a), literal(n), m).t);
          REQUIRE(unit_pow(Int(a), f, m).u == unit_pow(Int(a), literal(n), m).u);
          REQUIRE(exponent_value(shift_exponent(f, 5)) == n + 5);
        }
      }
    }
    for (std::uint64_t n = 0; n < 10; ++n) {
      const ExponentForm f = exponent::ProthForm{Int(13), n, -1};
      CHECK(cheb_U(Int(a), f, m) == cheb_U(Int(a), literal(exponent_value(f)), m));
    }
  }
}

TEST_CASE("special-form moduli give the same results as plain ones") {
  const ModulusShape shape{3, 61, -1};
  const OddModulus shaped = OddModulus::from_shape(shape);
  const OddModulus plain(shape.value());
  for (long a = 2; a < 10; ++a) {
    const Int e = Int(1) << 100;
    CHECK(unit_pow(Int(a), literal(e + 17), shaped).t == unit_pow(Int(a), literal(e + 17), plain).t);
    CHECK(compose_iterate(Int(a), 2, 59, shaped) == compose_iterate(Int(a), 2, 59, plain));
  }
}
