#pragma once

// Chebyshev pairs mod Q.
//
// The unit w = a + sqrt(a^2-1) satisfies w^n = T_n(a) + U_{n-1}(a) sqrt(a^2-1),
// so powering w in the ring (Z/QZ)[sqrt(a^2-1)] yields T_n(a) and U_{n-1}(a)
// together. Elements are stored as (t, u) with
//
//   (t1, u1) * (t2, u2) = (t1 t2 + (a^2-1) u1 u2,  t1 u2 + t2 u1),
//
// identity (1, 0) and generator (a, 1). Since w * conj(w) = 1 the inverse is
// the conjugate (t, -u), which gives T_{-n} = T_n and U_{-n} = -U_{n-2}.

#include <cstdint>
#include <variant>

#include "chebprime/arith.hpp"

namespace chebprime {

/// Residue pair (T_n(a), U_{n-1}(a)) mod Q, both in [0, Q).
struct ChebPair {
  Int t;
  Int u;
  Int base;
  Int modulus;
  Int index;
};

namespace exponent {

struct Literal {
  Int n;
};

/// q^p + c
struct PowerOffset {
  std::int64_t q = 2;
  std::uint64_t p = 0;
  std::int64_t c = 0;
};

/// k*2^n + c
struct ProthForm {
  Int k = 1;
  std::uint64_t n = 0;
  std::int64_t c = 0;
};

}  // namespace exponent

using ExponentForm = std::variant<exponent::Literal, exponent::PowerOffset, exponent::ProthForm>;

inline ExponentForm literal(Int n) { return exponent::Literal{std::move(n)}; }
inline ExponentForm literal(long n) { return exponent::Literal{Int(n)}; }

Int exponent_value(const ExponentForm& form);

/// Same form with c (or n) shifted by `delta`.
ExponentForm shift_exponent(const ExponentForm& form, std::int64_t delta);

/// Arithmetic in (Z/QZ)[sqrt(a^2-1)] for a fixed a and Q.
class UnitRing {
 public:
  struct Elem {
    Int t;
    Int u;
    friend bool operator==(const Elem&, const Elem&) = default;
  };

  UnitRing(const Int& a, const OddModulus& modulus);

  const Int& base() const noexcept { return base_; }
  const Int& discriminant() const noexcept { return disc_; }
  const OddModulus& modulus() const noexcept { return modulus_; }

  Elem one() const { return {Int(1), Int(0)}; }
  Elem generator() const { return {base_, Int(1)}; }
  Elem conjugate(const Elem& x) const;

  Elem mul(const Elem& x, const Elem& y) const;
  Elem sqr(const Elem& x) const;
  /// x^e for e >= 0, most-significant-bit first.
  Elem pow(const Elem& x, const Int& e) const;
  /// x^e for any sign of e.
  Elem pow_signed(const Elem& x, const Int& e) const;

  /// w^n for the exponent form, following the form's structure.
  Elem unit_power(const ExponentForm& n) const;

  bool is_one(const Elem& x) const;

 private:
  Elem times_unit(Elem x, std::int64_t c) const;

  OddModulus modulus_;
  Int base_;
  Int disc_;
};

ChebPair unit_pow(const Int& a, const ExponentForm& n, const OddModulus& modulus);

/// T_n(a) mod Q.
Int cheb_T(const Int& a, const ExponentForm& n, const OddModulus& modulus);

/// U_n(a) mod Q (note: U_n, not U_{n-1}).
Int cheb_U(const Int& a, const ExponentForm& n, const OddModulus& modulus);

/// T_m(x) mod Q by the ladder T_{2k} = 2T_k^2 - 1, T_{2k+1} = 2 T_k T_{k+1} - x.
/// Works on T values only and never forms the unit w.
Int cheb_T_ladder(const Int& x, const Int& m, const OddModulus& modulus);

/// s_0 = a, s_{k+1} = T_|q|(s_k) mod Q; returns s_steps = T_{|q|^steps}(a).
Int compose_iterate(const Int& a, std::int64_t q, std::uint64_t steps, const OddModulus& modulus);

}  // namespace chebprime
