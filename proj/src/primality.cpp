#include "chebprime/primality.hpp"

#include <cstdlib>

namespace chebprime {

SharedFactorError::SharedFactorError(Int witness, Int modulus)
    : std::runtime_error("gcd(a^2-1, Q) = " + to_string(witness) + " shares a factor with Q = " + to_string(modulus)),
      witness_(std::move(witness)),
      modulus_(std::move(modulus)) {}

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::ProvedPrime: return "proved-prime";
    case VerdictStatus::ProvedComposite: return "proved-composite";
    case VerdictStatus::ProbablePrime: return "probable-prime";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(Reason reason) {
  switch (reason) {
    case Reason::CongruencePass: return "congruence-pass";
    case Reason::FailedTCongruence: return "failed-t-congruence";
    case Reason::FailedUCongruence: return "failed-u-congruence";
    case Reason::SharedFactor: return "shared-factor";
    case Reason::PerfectSquare: return "perfect-square";
    case Reason::ProfileRule: return "profile-rule";
    case Reason::DegenerateBase: return "degenerate-base";
    case Reason::OrderCertified: return "order-certified";
    case Reason::OrderUndetermined: return "order-undetermined";
    case Reason::NoQualifyingBase: return "no-qualifying-base";
    case Reason::LucasLehmer: return "lucas-lehmer";
    case Reason::SufficiencyPassed: return "sufficiency-passed";
    case Reason::SufficiencyFailed: return "sufficiency-failed";
    case Reason::SufficiencyHypothesisUnmet: return "sufficiency-hypothesis-unmet";
  }
  return "unknown";
}

SymbolPair symbols(const Int& a, const OddModulus& modulus) {
  const Int& q = modulus.value();
  const Int disc = a * a - 1;
  const int eps = jacobi(disc, q);
  const int delta = jacobi(2 * (a + 1), q);
  if (eps == 0 || delta == 0) {
    // 2(a+1) | 2(a^2-1) and Q is odd, so the first gcd already catches both.
    Int g = gcd(disc, q);
    if (g == 0) g = q;
    throw SharedFactorError(std::move(g), q);
  }
  return {eps, delta};
}

namespace {

Int residue_of(int sign, const Int& q) { return sign >= 0 ? Int(sign) : Int(q - 1); }

bool elem_matches(const UnitRing::Elem& x, int delta, const Int& q, bool& t_ok, bool& u_ok) {
  t_ok = x.t == residue_of(delta, q);
  u_ok = sgn(x.u) == 0;
  return t_ok && u_ok;
}

Verdict composite(Reason reason, Certificate cert = {}) {
  return Verdict{VerdictStatus::ProvedComposite, reason, std::move(cert)};
}

// Square filter and symbol evaluation shared by the base and strong tests.
// Returns a verdict when the test is already decided.
std::optional<Verdict> prefilter(const OddModulus& modulus, const Int& a) {
  Certificate cert;
  cert.base = a;
  if (auto sq = is_perfect_square(modulus.value()); sq.is_square) {
    cert.witness = sq.root;
    return composite(Reason::PerfectSquare, std::move(cert));
  }
  try {
    (void)symbols(a, modulus);
  } catch (const SharedFactorError& e) {
    cert.witness = e.witness();
    if (e.proper()) return composite(Reason::SharedFactor, std::move(cert));
    return Verdict{VerdictStatus::Inconclusive, Reason::DegenerateBase, std::move(cert)};
  }
  return std::nullopt;
}

Verdict from_congruence(const CongruenceResult& c, const Int& a) {
  Certificate cert;
  cert.base = a;
  cert.symbols = c.symbols;
  cert.residues = {{"T", c.power.t}, {"U", c.power.u}};
  if (!c.t_holds) return composite(Reason::FailedTCongruence, std::move(cert));
  if (!c.u_holds) return composite(Reason::FailedUCongruence, std::move(cert));
  return Verdict{VerdictStatus::ProbablePrime, Reason::CongruencePass, std::move(cert)};
}

}  // namespace

CongruenceResult evaluate_congruence(const Int& a, const OddModulus& modulus) {
  CongruenceResult r;
  r.symbols = symbols(a, modulus);
  r.half_exponent = (modulus.value() - r.symbols.epsilon) / 2;
  const UnitRing ring(a, modulus);
  r.power = ring.pow(ring.generator(), r.half_exponent);
  elem_matches(r.power, r.symbols.delta, modulus.value(), r.t_holds, r.u_holds);
  return r;
}

ProfileResult evaluate_profile(const Int& a, const OddModulus& modulus) {
  ProfileResult out;
  CongruenceResult& c = out.congruence;
  c.symbols = symbols(a, modulus);
  c.half_exponent = (modulus.value() - c.symbols.epsilon) / 2;

  Int odd = c.half_exponent;
  const mp_bitcnt_t twos = sgn(odd) == 0 ? 0 : mpz_scan1(odd.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), twos);

  const UnitRing ring(a, modulus);
  UnitRing::Elem x = ring.pow(ring.generator(), odd);
  out.profile.entries.push_back(x.t);
  for (mp_bitcnt_t j = 0; j < twos; ++j) {
    x = ring.sqr(x);
    out.profile.entries.push_back(x.t);
  }
  c.power = std::move(x);
  elem_matches(c.power, c.symbols.delta, modulus.value(), c.t_holds, c.u_holds);
  return out;
}

std::optional<std::size_t> profile_rule_violation(const Profile& profile, const Int& modulus) {
  const Int minus_one = modulus - 1;
  const auto& e = profile.entries;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const Int& prev = e[i - 1];
    if (e[i] == 1 && prev != 1 && prev != minus_one) return i;
    if (e[i] == minus_one && sgn(prev) != 0) return i;
  }
  return std::nullopt;
}

Verdict chebyshev_test(const OddModulus& modulus, const Int& a) {
  if (auto decided = prefilter(modulus, a)) return *decided;
  return from_congruence(evaluate_congruence(a, modulus), a);
}

StrongResult strong_test(const OddModulus& modulus, const Int& a) {
  if (auto decided = prefilter(modulus, a)) return {*decided, {}};
  ProfileResult pr = evaluate_profile(a, modulus);
  Verdict v = from_congruence(pr.congruence, a);
  v.certificate.profile = pr.profile;
  if (v.passed()) {
    if (auto bad = profile_rule_violation(pr.profile, modulus.value())) {
      v.status = VerdictStatus::ProvedComposite;
      v.reason = Reason::ProfileRule;
      v.certificate.residues.emplace_back("profile_index", Int(static_cast<unsigned long>(*bad)));
    }
  }
  return {std::move(v), std::move(pr.profile)};
}

bool weak_test(const OddModulus& modulus, const Int& a) {
  Int ar = a;
  modulus.reduce(ar);
  return cheb_T(a, literal(modulus.value()), modulus) == ar;
}

bool mod_square_check(const OddModulus& modulus, const Int& a) {
  const SymbolPair s = symbols(a, modulus);
  const Int& q = modulus.value();
  const OddModulus square(q * q);
  const Int t = cheb_T(a, literal((q - s.epsilon) / 2), square);
  return t == residue_of(s.delta, square.value());
}

Int cyclotomic_value(std::int64_t q, std::uint64_t p) {
  if (q == 1) throw std::invalid_argument("cyclotomic_value: q must not be 1");
  Int qp;
  mpz_ui_pow_ui(qp.get_mpz_t(), static_cast<unsigned long>(std::llabs(q)), p);
  if (q < 0 && p % 2 == 1) qp = -qp;
  return (qp - 1) / Int(static_cast<long>(q - 1));
}

Theorem1Result theorem1_check(std::int64_t q, std::uint64_t p, const Int& a) {
  if (std::llabs(q) < 2) throw std::invalid_argument("theorem1_check: |q| must be at least 2");
  if (p < 3 || trial_division_oracle(Int(p)).status != OracleStatus::Prime) {
    throw std::invalid_argument("theorem1_check: p must be an odd prime");
  }
  Theorem1Result r;
  r.phi = cyclotomic_value(q, p);
  const OddModulus modulus(r.phi);
  const Int g = gcd(a * a - 1, r.phi);
  if (g != 1) throw SharedFactorError(g, r.phi);
  r.epsilon = jacobi(a * a - 1, r.phi);

  // T_{q^p} = T_{|q|^p} by p-fold composition of T_|q|.
  r.t_lhs = compose_iterate(a, q, p, modulus);
  r.t_rhs = cheb_T(a, literal(Int(static_cast<long>(q + r.epsilon - 1))), modulus);
  r.t_holds = r.t_lhs == r.t_rhs;

  const std::int64_t offset = -static_cast<std::int64_t>(r.epsilon) * (q - 1) - 2;
  r.u_value = cheb_U(a, exponent::PowerOffset{q, p, offset}, modulus);
  r.u_holds = sgn(r.u_value) == 0;
  return r;
}

Verdict order_certify(const OddModulus& modulus, const Int& a, const Factorization& factors) {
  const Int& q = modulus.value();
  SymbolPair s;
  try {
    s = symbols(a, modulus);
  } catch (const SharedFactorError& e) {
    Certificate cert;
    cert.base = a;
    cert.witness = e.witness();
    if (e.proper()) return composite(Reason::SharedFactor, std::move(cert));
    return Verdict{VerdictStatus::Inconclusive, Reason::DegenerateBase, std::move(cert)};
  }
  if (s.delta != -1) throw PreconditionError("order_certify: requires delta = (2(a+1) | Q) = -1");

  const Int group_order = q - s.epsilon;
  Int product = 1;
  bool has_two = false;
  for (const auto& [prime, exp] : factors) {
    if (prime < 2 || exp == 0) throw std::invalid_argument("order_certify: malformed factor");
    if (prime == 2) has_two = true;
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), prime.get_mpz_t(), exp);
    product *= pe;
  }
  if (product != group_order || !has_two) {
    throw std::invalid_argument("order_certify: factors do not multiply to Q - eps = " + to_string(group_order));
  }

  const UnitRing ring(a, modulus);
  Certificate cert;
  cert.base = a;
  cert.symbols = s;
  const UnitRing::Elem half = ring.pow(ring.generator(), group_order / 2);
  cert.residues = {{"T", half.t}, {"U", half.u}};
  if (half.t != q - 1) return composite(Reason::FailedTCongruence, std::move(cert));
  if (sgn(half.u) != 0) return composite(Reason::FailedUCongruence, std::move(cert));

  for (const auto& [prime, exp] : factors) {
    if (prime == 2) continue;
    const UnitRing::Elem x = ring.pow(ring.generator(), group_order / prime);
    if (ring.is_one(x)) {
      cert.residues.emplace_back("order_divides_quotient_by", prime);
      return Verdict{VerdictStatus::Inconclusive, Reason::OrderUndetermined, std::move(cert)};
    }
  }
  cert.order = group_order;
  return Verdict{VerdictStatus::ProvedPrime, Reason::OrderCertified, std::move(cert)};
}

Verdict proth_test(const Int& k, std::uint64_t n, unsigned base_cap, std::optional<Int> base) {
  if (k < 1 || mpz_even_p(k.get_mpz_t())) throw std::invalid_argument("proth_test: k must be odd and positive");
  if (n < 1) throw std::invalid_argument("proth_test: n must be positive");
  Int two_n = 1;
  mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), n);
  if (k >= two_n) throw std::invalid_argument("proth_test: requires k < 2^n");

  const Int value = k * two_n + 1;
  const OddModulus modulus = mpz_fits_ulong_p(k.get_mpz_t()) != 0
                                 ? OddModulus(value, ModulusShape{k.get_ui(), n, 1})
                                 : OddModulus(value);
  Certificate cert;
  if (auto sq = is_perfect_square(value); sq.is_square) {
    cert.witness = sq.root;
    return composite(Reason::PerfectSquare, std::move(cert));
  }

  std::optional<Int> chosen;
  SymbolPair chosen_symbols;
  auto qualifies = [&](const Int& a, SymbolPair& out) -> std::optional<Verdict> {
    try {
      out = symbols(a, modulus);
    } catch (const SharedFactorError& e) {
      if (e.proper()) {
        Certificate c;
        c.base = a;
        c.witness = e.witness();
        return composite(Reason::SharedFactor, std::move(c));
      }
      out = {};
    }
    return std::nullopt;
  };

  if (base) {
    SymbolPair s;
    if (auto v = qualifies(*base, s)) return *v;
    if (s.epsilon != 1) throw PreconditionError("proth_test: base violates epsilon = (a^2-1 | N) = 1");
    if (s.delta != -1) throw PreconditionError("proth_test: base violates delta = (2(a+1) | N) = -1");
    chosen = *base;
    chosen_symbols = s;
  } else {
    for (unsigned a = 2; a <= base_cap; ++a) {
      SymbolPair s;
      if (auto v = qualifies(Int(a), s)) return *v;
      if (s.epsilon == 1 && s.delta == -1) {
        chosen = Int(a);
        chosen_symbols = s;
        break;
      }
    }
  }
  if (!chosen) return Verdict{VerdictStatus::Inconclusive, Reason::NoQualifyingBase, std::move(cert)};

  cert.base = *chosen;
  cert.symbols = chosen_symbols;
  const UnitRing ring(*chosen, modulus);
  const UnitRing::Elem x = ring.unit_power(exponent::ProthForm{k, n - 1, 0});
  cert.residues = {{"T", x.t}, {"U", x.u}};
  if (x.t != value - 1) return composite(Reason::FailedTCongruence, std::move(cert));
  if (sgn(x.u) != 0) return composite(Reason::FailedUCongruence, std::move(cert));
  cert.order = value - 1;
  return Verdict{VerdictStatus::ProvedPrime, Reason::CongruencePass, std::move(cert)};
}

}  // namespace chebprime
