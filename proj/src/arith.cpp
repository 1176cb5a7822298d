#include "chebprime/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace chebprime {

Int parse_int(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw std::invalid_argument("malformed integer: '" + std::string(text) + "'");
  }
  Int v;
  v.set_str(std::string(digits), 10);
  if (text.front() == '-') v = -v;
  return v;
}

Int ModulusShape::value() const {
  Int v = k;
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), n);
  v += c;
  return v;
}

void ModulusShape::validate() const {
  if (k == 0 || k % 2 == 0) throw std::invalid_argument("modulus shape: k must be odd and positive");
  if (c != 1 && c != -1) throw std::invalid_argument("modulus shape: c must be +1 or -1");
  if (n == 0) throw std::invalid_argument("modulus shape: n must be positive");
  if (value() < 3) throw std::invalid_argument("modulus shape: value must be at least 3");
}

OddModulus::OddModulus(Int value) : value_(std::move(value)) {
  if (value_ < 3 || mpz_even_p(value_.get_mpz_t())) {
    throw std::invalid_argument("modulus must be odd and >= 3, got " + to_string(value_));
  }
}

OddModulus::OddModulus(Int value, ModulusShape shape) : OddModulus(std::move(value)) {
  shape.validate();
  if (shape.value() != value_) throw std::invalid_argument("modulus shape does not match modulus value");
  shape_ = shape;
}

OddModulus OddModulus::from_shape(const ModulusShape& shape) {
  shape.validate();
  return OddModulus(shape.value(), shape);
}

void OddModulus::reduce(Int& x) const {
  if (shape_ && sgn(x) >= 0) {
    x = reduce_special(x, *shape_);
    return;
  }
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), value_.get_mpz_t());
}

int jacobi(const Int& a, const Int& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t())) {
    throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + to_string(n));
  }
  // Reduction into [0, n) takes care of negative numerators: the (-1 | n)
  // factor is absorbed by the representative.
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return mpz_jacobi(r.get_mpz_t(), n.get_mpz_t());
}

SquareCheck is_perfect_square(const Int& n) {
  if (sgn(n) < 0) throw std::invalid_argument("is_perfect_square: negative input");
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return {};
  return {true, isqrt(n)};
}

Int isqrt(const Int& n) {
  if (sgn(n) < 0) throw std::invalid_argument("isqrt: negative input");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int reduce_special(const Int& x, const ModulusShape& form) {
  form.validate();
  if (sgn(x) < 0) throw std::invalid_argument("reduce_special: negative input");
  const Int modulus = form.value();
  const std::size_t k_bits = mpz_sizeinbase(Int(form.k).get_mpz_t(), 2);
  const std::size_t stop_bits = form.n + k_bits + 1;

  // Invariant: x == sign * v (mod Q). Each fold uses k*2^n == -c.
  Int v = x;
  int sign = 1;
  Int hi, lo, q1, q0;
  std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  while (sgn(v) != 0 && bits > stop_bits) {
    mpz_fdiv_q_2exp(hi.get_mpz_t(), v.get_mpz_t(), form.n);
    mpz_fdiv_r_2exp(lo.get_mpz_t(), v.get_mpz_t(), form.n);
    if (form.k == 1) {
      q1 = hi;
      q0 = 0;
    } else {
      q0 = mpz_fdiv_q_ui(q1.get_mpz_t(), hi.get_mpz_t(), form.k);
    }
    mpz_mul_2exp(q0.get_mpz_t(), q0.get_mpz_t(), form.n);
    q0 += lo;
    if (form.c == 1) {
      q0 -= q1;
    } else {
      q0 += q1;
    }
    if (sgn(q0) < 0) {
      sign = -sign;
      q0 = -q0;
    }
    const std::size_t next_bits = mpz_sizeinbase(q0.get_mpz_t(), 2);
    v.swap(q0);
    if (next_bits >= bits) break;  // tiny n: folding no longer shrinks
    bits = next_bits;
  }
  if (sign < 0) v = -v;
  mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  return v;
}

namespace {

// Smallest d in [2, limit] dividing n, or 0.
std::uint64_t smallest_divisor_u64(std::uint64_t n, std::uint64_t limit) {
  if (limit >= 2 && n % 2 == 0) return 2;
  for (std::uint64_t d = 3; d <= limit; d += 2) {
    if (n % d == 0) return d;
  }
  return 0;
}

std::uint64_t smallest_divisor_big(const Int& n, std::uint64_t limit) {
  if (limit >= 2 && mpz_even_p(n.get_mpz_t())) return 2;
  for (std::uint64_t d = 3; d <= limit; d += 2) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) return d;
  }
  return 0;
}

}  // namespace

OracleVerdict trial_division_oracle(const Int& n, std::optional<Int> bound) {
  if (n < 2) throw std::invalid_argument("trial_division_oracle: n must be >= 2");
  const Int root = isqrt(n);
  Int limit = root;
  if (bound) {
    if (*bound < 1) throw std::invalid_argument("trial_division_oracle: bound must be positive");
    limit = std::min(limit, *bound);
  } else {
    limit = std::min(limit, Int(kDefaultOracleDivisorCap));
  }
  // limit <= 2^32 or bounded by a caller; anything larger cannot be
  // exhausted by trial division anyway.
  if (!mpz_fits_ulong_p(limit.get_mpz_t())) throw std::invalid_argument("trial_division_oracle: bound too large");
  const std::uint64_t lim = limit.get_ui();

  const std::uint64_t d = mpz_fits_ulong_p(n.get_mpz_t()) != 0 ? smallest_divisor_u64(n.get_ui(), lim)
                                                                 : smallest_divisor_big(n, lim);
  if (d != 0) return {OracleStatus::Composite, Int(d)};
  if (limit < root) return {OracleStatus::Unknown, std::nullopt};
  return {OracleStatus::Prime, std::nullopt};
}

bool reference_is_prime(const Int& n) {
  if (n < 2) return false;
  const OracleVerdict v = trial_division_oracle(n, Int(1) << 20);
  if (v.status != OracleStatus::Unknown) return v.status == OracleStatus::Prime;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::pair<Int, unsigned>> trial_factor(Int n) {
  if (n < 1) throw std::invalid_argument("trial_factor: n must be positive");
  std::vector<std::pair<Int, unsigned>> out;
  if (mpz_fits_ulong_p(n.get_mpz_t()) != 0) {
    std::uint64_t m = n.get_ui();
    auto strip_small = [&](std::uint64_t p) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e > 0) out.emplace_back(Int(p), e);
    };
    strip_small(2);
    for (std::uint64_t d = 3; d <= m / d; d += 2) strip_small(d);
    if (m > 1) out.emplace_back(Int(m), 1);
    return out;
  }
  auto strip = [&](const Int& p) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(Int(2));
  for (Int d = 3; d * d <= n; d += 2) strip(d);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> prime_factors_flat(const Int& n) {
  std::vector<Int> flat;
  for (const auto& [p, e] : trial_factor(n)) {
    for (unsigned i = 0; i < e; ++i) flat.push_back(p);
  }
  return flat;
}

bool is_squarefree(const std::vector<std::pair<Int, unsigned>>& factorization) {
  return std::all_of(factorization.begin(), factorization.end(), [](const auto& pe) { return pe.second == 1; });
}

}  // namespace chebprime
