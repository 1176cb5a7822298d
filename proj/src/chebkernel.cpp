#include "chebprime/chebkernel.hpp"

#include <cstdlib>
#include <stdexcept>

namespace chebprime {

Int exponent_value(const ExponentForm& form) {
  return std::visit(
      [](const auto& f) -> Int {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, exponent::Literal>) {
          return f.n;
        } else if constexpr (std::is_same_v<F, exponent::PowerOffset>) {
          Int v;
          mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(std::llabs(f.q)), f.p);
          if (f.q < 0 && f.p % 2 == 1) v = -v;
          return v + Int(static_cast<long>(f.c));
        } else {
          Int v = f.k;
          mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), f.n);
          return v + Int(static_cast<long>(f.c));
        }
      },
      form);
}

ExponentForm shift_exponent(const ExponentForm& form, std::int64_t delta) {
  return std::visit(
      [delta](auto f) -> ExponentForm {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, exponent::Literal>) {
          f.n += Int(static_cast<long>(delta));
        } else {
          f.c += delta;
        }
        return f;
      },
      form);
}

UnitRing::UnitRing(const Int& a, const OddModulus& modulus) : modulus_(modulus), base_(a) {
  modulus_.reduce(base_);
  disc_ = base_ * base_ - 1;
  modulus_.reduce(disc_);
}

UnitRing::Elem UnitRing::conjugate(const Elem& x) const {
  Elem r{x.t, sgn(x.u) == 0 ? Int(0) : Int(modulus_.value() - x.u)};
  return r;
}

UnitRing::Elem UnitRing::mul(const Elem& x, const Elem& y) const {
  Elem r;
  Int uu = x.u * y.u;
  modulus_.reduce(uu);
  r.t = x.t * y.t + disc_ * uu;
  r.u = x.t * y.u + x.u * y.t;
  modulus_.reduce(r.t);
  modulus_.reduce(r.u);
  return r;
}

UnitRing::Elem UnitRing::sqr(const Elem& x) const {
  Elem r;
  Int uu = x.u * x.u;
  modulus_.reduce(uu);
  r.t = x.t * x.t + disc_ * uu;
  r.u = x.t * x.u;
  r.u <<= 1;
  modulus_.reduce(r.t);
  modulus_.reduce(r.u);
  return r;
}

UnitRing::Elem UnitRing::pow(const Elem& x, const Int& e) const {
  if (sgn(e) < 0) throw std::invalid_argument("UnitRing::pow: negative exponent");
  Elem acc = one();
  if (sgn(e) == 0) return acc;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = sqr(acc);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) acc = mul(acc, x);
  }
  return acc;
}

UnitRing::Elem UnitRing::pow_signed(const Elem& x, const Int& e) const {
  if (sgn(e) >= 0) return pow(x, e);
  return conjugate(pow(x, Int(-e)));
}

UnitRing::Elem UnitRing::times_unit(Elem x, std::int64_t c) const {
  if (c == 0) return x;
  if (std::llabs(c) <= 64) {
    const Elem step = c > 0 ? generator() : conjugate(generator());
    for (std::int64_t i = 0; i < std::llabs(c); ++i) x = mul(x, step);
    return x;
  }
  return mul(x, pow_signed(generator(), Int(static_cast<long>(c))));
}

UnitRing::Elem UnitRing::unit_power(const ExponentForm& n) const {
  return std::visit(
      [this](const auto& f) -> Elem {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, exponent::Literal>) {
          return pow_signed(generator(), f.n);
        } else if constexpr (std::is_same_v<F, exponent::PowerOffset>) {
          const std::uint64_t mag = static_cast<std::uint64_t>(std::llabs(f.q));
          if (mag < 2) return pow_signed(generator(), exponent_value(f));
          // q-nary expansion: w^(|q|^p) by p successive |q|-th powers.
          Elem x = generator();
          const Int step(static_cast<unsigned long>(mag));
          for (std::uint64_t i = 0; i < f.p; ++i) x = pow(x, step);
          if (f.q < 0 && f.p % 2 == 1) x = conjugate(x);
          return times_unit(std::move(x), f.c);
        } else {
          Elem x = pow_signed(generator(), f.k);
          for (std::uint64_t i = 0; i < f.n; ++i) x = sqr(x);
          return times_unit(std::move(x), f.c);
        }
      },
      n);
}

bool UnitRing::is_one(const Elem& x) const { return x.t == 1 && sgn(x.u) == 0; }

ChebPair unit_pow(const Int& a, const ExponentForm& n, const OddModulus& modulus) {
  const UnitRing ring(a, modulus);
  UnitRing::Elem e = ring.unit_power(n);
  return ChebPair{std::move(e.t), std::move(e.u), a, modulus.value(), exponent_value(n)};
}

Int cheb_T(const Int& a, const ExponentForm& n, const OddModulus& modulus) {
  const UnitRing ring(a, modulus);
  return ring.unit_power(n).t;
}

Int cheb_U(const Int& a, const ExponentForm& n, const OddModulus& modulus) {
  // U_n is the sqrt-coefficient of w^(n+1).
  const UnitRing ring(a, modulus);
  return ring.unit_power(shift_exponent(n, 1)).u;
}

Int cheb_T_ladder(const Int& x, const Int& m, const OddModulus& modulus) {
  Int xr = x;
  modulus.reduce(xr);
  const Int e = abs(m);
  Int lo = 1;  // T_k
  Int hi = xr; // T_{k+1}
  if (sgn(e) == 0) return lo;
  Int cross;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    cross = lo * hi;
    cross <<= 1;
    cross -= xr;
    modulus.reduce(cross);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) {
      hi = hi * hi;
      hi <<= 1;
      hi -= 1;
      modulus.reduce(hi);
      lo.swap(cross);
    } else {
      lo = lo * lo;
      lo <<= 1;
      lo -= 1;
      modulus.reduce(lo);
      hi.swap(cross);
    }
  }
  return lo;
}

Int compose_iterate(const Int& a, std::int64_t q, std::uint64_t steps, const OddModulus& modulus) {
  if (std::llabs(q) < 2) throw std::invalid_argument("compose_iterate: |q| must be at least 2");
  Int s = a;
  modulus.reduce(s);
  const Int degree(static_cast<unsigned long>(std::llabs(q)));
  for (std::uint64_t i = 0; i < steps; ++i) {
    if (degree == 2) {
      s = s * s;
      s <<= 1;
      s -= 1;
      modulus.reduce(s);
    } else {
      s = cheb_T_ladder(s, degree, modulus);
    }
  }
  return s;
}

}  // namespace chebprime
