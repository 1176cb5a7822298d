#pragma once

// Independent reference implementations for the test suites. Nothing here
// calls into the library; everything is plain recurrences and trial division.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime(static_cast<u64>(n.get_ui()));
  for (unsigned long d = 2; mpz_class(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) return false;
  }
  return true;
}

inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
  }
  return r;
}

inline i64 mod(i64 a, u64 m) {
  const i64 r = a % static_cast<i64>(m);
  return r < 0 ? r + static_cast<i64>(m) : r;
}

// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre(i64 a, u64 p) {
  const u64 r = powmod(static_cast<u64>(mod(a, p)), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// Jacobi symbol as the product of Legendre symbols over the factorization.
inline int jacobi(i64 a, u64 n) {
  int s = 1;
  for (auto [p, e] : factor(n)) {
    const int l = legendre(a, p);
    for (unsigned i = 0; i < e; ++i) s *= l;
  }
  return s;
}

// Exact T_n(a), U_n(a) by the three-term recurrence, n >= 0.
inline mpz_class T_exact(long a, unsigned n) {
  mpz_class t0 = 1, t1 = a;
  if (n == 0) return t0;
  for (unsigned i = 1; i < n; ++i) {
    mpz_class t2 = 2 * a * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

inline mpz_class U_exact(long a, unsigned n) {
  mpz_class u0 = 1, u1 = 2 * a;
  if (n == 0) return u0;
  for (unsigned i = 1; i < n; ++i) {
    mpz_class u2 = 2 * a * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

// (T_n(a) mod m, U_{n-1}(a) mod m) by the linear recurrence, n >= 0, with
// U_{-1} = 0. O(n); meant for n up to a few million.
struct TU {
  u64 t;
  u64 u;
};

inline TU tu_mod(i64 a, u64 n, u64 m) {
  const u64 am = static_cast<u64>(mod(a, m));
  const u64 two_a = mulmod(2, am, m);
  u64 t0 = 1 % m, t1 = am;   // T_0, T_1
  u64 u0 = 0, u1 = 1 % m;    // U_{-1}, U_0
  if (n == 0) return {t0, u0};
  for (u64 i = 1; i < n; ++i) {
    const u64 t2 = (mulmod(two_a, t1, m) + m - t0) % m;
    const u64 u2 = (mulmod(two_a, u1, m) + m - u0) % m;
    t0 = t1;
    t1 = t2;
    u0 = u1;
    u1 = u2;
  }
  return {t1, u1};
}

inline u64 T_mod(i64 a, u64 n, u64 m) { return tu_mod(a, n, m).t; }

// U_n(a) mod m for n >= -1.
inline u64 U_mod(i64 a, i64 n, u64 m) { return n < 0 ? 0 : tu_mod(a, static_cast<u64>(n) + 1, m).u; }

inline bool is_square(u64 n) {
  u64 r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

}  // namespace oracle
