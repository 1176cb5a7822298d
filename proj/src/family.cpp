#include "chebprime/family.hpp"

#include <cstdlib>
#include <string>

namespace chebprime {

namespace {

bool small_prime(std::uint64_t v) {
  return v >= 2 && trial_division_oracle(Int(static_cast<unsigned long>(v))).status == OracleStatus::Prime;
}

Int pow2(std::uint64_t e) {
  Int v = 1;
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), e);
  return v;
}

Int upow(std::uint64_t b, std::uint64_t e) {
  Int v;
  mpz_ui_pow_ui(v.get_mpz_t(), b, e);
  return v;
}

// (2 - r) mod 3, the exponent parity that makes r*2^n - 1 == 1 (mod 3).
std::uint64_t riesel_parity(std::uint64_t r) { return (2 + 3 - r % 3) % 3; }

std::string symbol_name(int which) { return which == 0 ? "epsilon" : "delta"; }

// Resolves the base and its symbols. An override must produce `expected`
// (components set to 0 are unconstrained).
struct BaseChoice {
  Int a;
  SymbolPair symbols;
};

std::variant<BaseChoice, Verdict> choose_base(const OddModulus& modulus, const Int& default_base,
                                              const FamilyOptions& options, SymbolPair expected) {
  const Int a = options.base.value_or(default_base);
  SymbolPair s;
  try {
    s = symbols(a, modulus);
  } catch (const SharedFactorError& e) {
    Certificate cert;
    cert.base = a;
    cert.witness = e.witness();
    if (e.proper()) return Verdict{VerdictStatus::ProvedComposite, Reason::SharedFactor, std::move(cert)};
    return Verdict{VerdictStatus::Inconclusive, Reason::DegenerateBase, std::move(cert)};
  }
  if (options.base) {
    const int got[2] = {s.epsilon, s.delta};
    const int want[2] = {expected.epsilon, expected.delta};
    for (int i = 0; i < 2; ++i) {
      if (want[i] != 0 && got[i] != want[i]) {
        throw PreconditionError("base override " + to_string(a) + " violates " + symbol_name(i) + " = " +
                                std::to_string(want[i]) + " (got " + std::to_string(got[i]) + ")");
      }
    }
  }
  return BaseChoice{a, s};
}

// w^((Q-eps)/2) == delta; necessity only.
Verdict congruence_verdict(const OddModulus& modulus, const BaseChoice& b, bool sufficiency_requested) {
  const UnitRing ring(b.a, modulus);
  const Int& q = modulus.value();
  const UnitRing::Elem x = ring.pow(ring.generator(), (q - b.symbols.epsilon) / 2);
  Certificate cert;
  cert.base = b.a;
  cert.symbols = b.symbols;
  cert.residues = {{"T", x.t}, {"U", x.u}};
  const Int want = b.symbols.delta > 0 ? Int(1) : Int(q - 1);
  if (x.t != want) return {VerdictStatus::ProvedComposite, Reason::FailedTCongruence, std::move(cert)};
  if (sgn(x.u) != 0) return {VerdictStatus::ProvedComposite, Reason::FailedUCongruence, std::move(cert)};
  if (sufficiency_requested) {
    return {VerdictStatus::Inconclusive, Reason::SufficiencyHypothesisUnmet, std::move(cert)};
  }
  return {VerdictStatus::ProbablePrime, Reason::CongruencePass, std::move(cert)};
}

Int doubled(const Int& t, const OddModulus& modulus) {
  Int s = t * 2;
  modulus.reduce(s);
  return s;
}

Verdict run_mersenne(const family::Mersenne& f, const FamilyOptions& opt) {
  const OddModulus modulus = OddModulus::from_shape(ModulusShape::mersenne(f.p));
  auto choice = choose_base(modulus, Int(2), opt, {-1, -1});
  if (auto* v = std::get_if<Verdict>(&choice)) return *v;
  const BaseChoice& b = std::get<BaseChoice>(choice);
  if (b.symbols != SymbolPair{-1, -1}) return congruence_verdict(modulus, b, false);

  // w^(2^(p-1)) = -1  <=>  T_{2^(p-2)}(a) = 0, and that fixes the order at Q + 1.
  const Int t = compose_iterate(b.a, 2, f.p - 2, modulus);
  Certificate cert;
  cert.base = b.a;
  cert.symbols = b.symbols;
  cert.sequence_index = f.p - 2;
  cert.sequence_value = doubled(t, modulus);
  cert.residues = {{"T_{2^(p-2)}", t}};
  if (sgn(t) != 0) return {VerdictStatus::ProvedComposite, Reason::FailedTCongruence, std::move(cert)};
  cert.order = modulus.value() + 1;
  return {VerdictStatus::ProvedPrime, Reason::LucasLehmer, std::move(cert)};
}

Verdict run_wagstaff(const family::Wagstaff& f, const FamilyOptions& opt) {
  const OddModulus modulus(family_target(f));
  auto choice = choose_base(modulus, Int(2), opt, {});
  if (auto* v = std::get_if<Verdict>(&choice)) return *v;
  const BaseChoice& b = std::get<BaseChoice>(choice);
  Verdict v = congruence_verdict(modulus, b, false);
  v.certificate.sequence_index = f.p - 1;
  v.certificate.sequence_value = doubled(compose_iterate(b.a, 2, f.p - 1, modulus), modulus);
  return v;
}

Verdict run_cyclotomic(std::int64_t q, std::uint64_t p, const FamilyOptions& opt) {
  const Int a = opt.base.value_or(Int(2));
  Certificate cert;
  cert.base = a;
  Theorem1Result r;
  try {
    r = theorem1_check(q, p, a);
  } catch (const SharedFactorError& e) {
    cert.witness = e.witness();
    if (e.proper()) return {VerdictStatus::ProvedComposite, Reason::SharedFactor, std::move(cert)};
    return {VerdictStatus::Inconclusive, Reason::DegenerateBase, std::move(cert)};
  }
  cert.symbols = SymbolPair{r.epsilon, jacobi(2 * (a + 1), r.phi)};
  cert.sequence_index = p;
  cert.sequence_value = r.t_lhs;
  cert.residues = {{"T_{q^p}", r.t_lhs}, {"T_{q+eps-1}", r.t_rhs}, {"U_{q^p-eps(q-1)-2}", r.u_value}};
  if (!r.t_holds) return {VerdictStatus::ProvedComposite, Reason::FailedTCongruence, std::move(cert)};
  if (!r.u_holds) return {VerdictStatus::ProvedComposite, Reason::FailedUCongruence, std::move(cert)};
  return {VerdictStatus::ProbablePrime, Reason::CongruencePass, std::move(cert)};
}

Verdict run_three_pow(const family::ThreeTimesPow& f, const FamilyOptions& opt) {
  const OddModulus modulus = OddModulus::from_shape(ModulusShape{3, f.n, f.sign});
  auto choice = choose_base(modulus, Int(2), opt, {});
  if (auto* v = std::get_if<Verdict>(&choice)) return *v;
  const BaseChoice& b = std::get<BaseChoice>(choice);
  Verdict v = congruence_verdict(modulus, b, false);
  v.certificate.sequence_index = f.n - 1;
  v.certificate.sequence_value = doubled(compose_iterate(b.a, 2, f.n - 1, modulus), modulus);
  return v;
}

Verdict run_cubic(const family::Cubic& f, const FamilyOptions& opt) {
  const OddModulus modulus(family_target(f));
  auto choice = choose_base(modulus, Int(2), opt, {});
  if (auto* v = std::get_if<Verdict>(&choice)) return *v;
  const BaseChoice& b = std::get<BaseChoice>(choice);
  Verdict v = congruence_verdict(modulus, b, false);
  // Undoubled cubic iteration s_0 = a, s_{k+1} = T_3(s_k).
  v.certificate.sequence_index = f.p;
  v.certificate.sequence_value = compose_iterate(b.a, 3, f.p, modulus);
  return v;
}

Verdict run_riesel(const family::Riesel& f, const FamilyOptions& opt) {
  (void)family_target(f);
  const OddModulus modulus = OddModulus::from_shape(ModulusShape{f.r, f.n, -1});
  auto choice = choose_base(modulus, Int(2), opt, {-1, -1});
  if (auto* v = std::get_if<Verdict>(&choice)) return *v;
  const BaseChoice& b = std::get<BaseChoice>(choice);
  // delta = +1 only happens for n = 2; the order argument needs delta = -1.
  if (b.symbols != SymbolPair{-1, -1}) return congruence_verdict(modulus, b, opt.sufficiency);

  const Int r(static_cast<unsigned long>(f.r));
  const Int s_base = compose_iterate(b.a, 2, f.n - 2, modulus);  // T_{2^(n-2)}(a)
  const Int necessity = cheb_T_ladder(s_base, r, modulus);       // T_{r 2^(n-2)}(a)
  Certificate cert;
  cert.base = b.a;
  cert.symbols = b.symbols;
  cert.sequence_index = f.n - 2;
  cert.sequence_value = doubled(s_base, modulus);
  cert.residues = {{"T_{r*2^(n-2)}", necessity}};
  if (sgn(necessity) != 0) return {VerdictStatus::ProvedComposite, Reason::FailedTCongruence, std::move(cert)};
  if (!opt.sufficiency) return {VerdictStatus::ProbablePrime, Reason::CongruencePass, std::move(cert)};

  const Int top = compose_iterate(s_base, 2, 2, modulus);  // T_{2^n}(a)
  bool proved = true;
  for (const auto& [prime, exp] : trial_factor(r)) {
    (void)exp;
    const Int value = cheb_T_ladder(top, r / prime, modulus);
    cert.residues.emplace_back("T_{(r/" + to_string(prime) + ")*2^n}", value);
    if (value == 1) proved = false;
  }
  if (!proved) return {VerdictStatus::Inconclusive, Reason::SufficiencyFailed, std::move(cert)};
  cert.order = modulus.value() + 1;
  return {VerdictStatus::ProvedPrime, Reason::SufficiencyPassed, std::move(cert)};
}

Verdict run_twelve_q(const family::TwelveQ& f, const FamilyOptions& opt) {
  const OddModulus modulus(family_target(f));
  auto choice = choose_base(modulus, Int(2), opt, {1, -1});
  if (auto* v = std::get_if<Verdict>(&choice)) return *v;
  const BaseChoice& b = std::get<BaseChoice>(choice);
  if (b.symbols != SymbolPair{1, -1}) return congruence_verdict(modulus, b, opt.sufficiency);

  const auto q = static_cast<std::int64_t>(f.q);
  const Int prev = compose_iterate(b.a, q, f.n - 1, modulus);  // T_{q^(n-1)}(a)
  const Int cur = compose_iterate(prev, q, 1, modulus);        // T_{q^n}(a)
  const Int necessity = cheb_T_ladder(cur, Int(3), modulus);
  Certificate cert;
  cert.base = b.a;
  cert.symbols = b.symbols;
  cert.sequence_index = f.n;
  cert.sequence_value = cur;
  cert.residues = {{"T_{3q^n}", necessity}};
  if (sgn(necessity) != 0) return {VerdictStatus::ProvedComposite, Reason::FailedTCongruence, std::move(cert)};
  if (!opt.sufficiency) return {VerdictStatus::ProbablePrime, Reason::CongruencePass, std::move(cert)};

  const Int by_three = cheb_T_ladder(cur, Int(4), modulus);  // T_{4q^n}
  const Int by_q = cheb_T_ladder(prev, Int(12), modulus);    // T_{12q^(n-1)}
  cert.residues.emplace_back("T_{4q^n}", by_three);
  cert.residues.emplace_back("T_{12q^(n-1)}", by_q);
  if (by_three == 1 || by_q == 1) return {VerdictStatus::Inconclusive, Reason::SufficiencyFailed, std::move(cert)};
  cert.order = modulus.value() - 1;
  return {VerdictStatus::ProvedPrime, Reason::SufficiencyPassed, std::move(cert)};
}

Verdict run_fermat(const family::Fermat& f, const FamilyOptions& opt) {
  (void)family_target(f);
  const std::uint64_t exponent = std::uint64_t{1} << f.n;
  const OddModulus modulus = OddModulus::from_shape(ModulusShape{1, exponent, 1});
  auto choice = choose_base(modulus, Int(4), opt, {1, -1});
  if (auto* v = std::get_if<Verdict>(&choice)) return *v;
  const BaseChoice& b = std::get<BaseChoice>(choice);
  if (b.symbols != SymbolPair{1, -1}) return congruence_verdict(modulus, b, false);

  // s_0 = 2a, s_{k+1} = s_k^2 - 2; F_n prime iff s_{2^n - 2} == 0.
  const Int t = compose_iterate(b.a, 2, exponent - 2, modulus);
  Certificate cert;
  cert.base = b.a;
  cert.symbols = b.symbols;
  cert.sequence_index = exponent - 2;
  cert.sequence_value = doubled(t, modulus);
  cert.residues = {{"T_{2^(2^n-2)}", t}};
  if (sgn(t) != 0) return {VerdictStatus::ProvedComposite, Reason::FailedTCongruence, std::move(cert)};
  cert.order = modulus.value() - 1;
  return {VerdictStatus::ProvedPrime, Reason::LucasLehmer, std::move(cert)};
}

}  // namespace

std::string_view family_name(const FamilySpec& spec) {
  constexpr std::string_view names[] = {"mersenne", "wagstaff", "genmersenne", "genwagstaff", "three-pow",
                                        "cubic",    "riesel",   "twelveq",     "proth",       "fermat"};
  return names[spec.index()];
}

Int family_target(const FamilySpec& spec) {
  using namespace family;
  Int target = std::visit(
      [](const auto& f) -> Int {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Mersenne>) {
          if (f.p < 3) throw std::invalid_argument("mersenne: p must be >= 3");
          return pow2(f.p) - 1;
        } else if constexpr (std::is_same_v<F, Wagstaff>) {
          if (f.p < 5 || f.p % 2 == 0) throw std::invalid_argument("wagstaff: p must be odd and >= 5");
          return (pow2(f.p) + 1) / 3;
        } else if constexpr (std::is_same_v<F, GenMersenne> || std::is_same_v<F, GenWagstaff>) {
          if (f.q < 2) throw std::invalid_argument("generalized family: q must be >= 2");
          if (f.p < 3 || !small_prime(f.p)) throw std::invalid_argument("generalized family: p must be an odd prime");
          const std::int64_t q = std::is_same_v<F, GenMersenne> ? f.q : -f.q;
          return cyclotomic_value(q, f.p);
        } else if constexpr (std::is_same_v<F, ThreeTimesPow>) {
          if (f.n < 3) throw std::invalid_argument("three-pow: n must be > 2");
          if (f.sign != 1 && f.sign != -1) throw std::invalid_argument("three-pow: sign must be +1 or -1");
          return 3 * pow2(f.n) + f.sign;
        } else if constexpr (std::is_same_v<F, Cubic>) {
          if (f.p < 3 || !small_prime(f.p)) throw std::invalid_argument("cubic: p must be an odd prime");
          if (f.sign == -1) return (upow(3, f.p) - 1) / 2;
          if (f.sign == 1) return (upow(3, f.p) + 1) / 4;
          throw std::invalid_argument("cubic: sign must be +1 or -1");
        } else if constexpr (std::is_same_v<F, Riesel>) {
          if (f.r == 0 || f.r % 2 == 0 || f.r % 3 == 0) {
            throw std::invalid_argument("riesel: r must be odd and not divisible by 3");
          }
          if (!is_squarefree(trial_factor(Int(static_cast<unsigned long>(f.r))))) {
            throw std::invalid_argument("riesel: r must be squarefree");
          }
          if (f.n < 2) throw std::invalid_argument("riesel: n must be >= 2");
          if (f.n % 2 != riesel_parity(f.r) % 2) {
            throw std::invalid_argument("riesel: n must be congruent to (2 - r) mod 3 modulo 2, got n = " +
                                        std::to_string(f.n));
          }
          return Int(static_cast<unsigned long>(f.r)) * pow2(f.n) - 1;
        } else if constexpr (std::is_same_v<F, TwelveQ>) {
          if (f.q < 3 || !small_prime(f.q)) throw std::invalid_argument("twelveq: q must be an odd prime");
          if (f.n < 1) throw std::invalid_argument("twelveq: n must be >= 1");
          return 12 * upow(f.q, f.n) + 1;
        } else if constexpr (std::is_same_v<F, Proth>) {
          if (f.k < 1 || mpz_even_p(f.k.get_mpz_t())) throw std::invalid_argument("proth: k must be odd and positive");
          if (f.n < 1 || f.k >= pow2(f.n)) throw std::invalid_argument("proth: requires k < 2^n");
          return f.k * pow2(f.n) + 1;
        } else {
          if (f.n < 2 || f.n > 24) throw std::invalid_argument("fermat: n must be in [2, 24]");
          return pow2(std::uint64_t{1} << f.n) + 1;
        }
      },
      spec);
  if (target <= 3) throw std::invalid_argument(std::string(family_name(spec)) + ": target must exceed 3");
  return target;
}

Verdict family_test(const FamilySpec& spec, const FamilyOptions& options) {
  using namespace family;
  return std::visit(
      [&options](const auto& f) -> Verdict {
        using F = std::decay_t<decltype(f)>;
        (void)family_target(f);
        if constexpr (std::is_same_v<F, Mersenne>) {
          return run_mersenne(f, options);
        } else if constexpr (std::is_same_v<F, Wagstaff>) {
          return run_wagstaff(f, options);
        } else if constexpr (std::is_same_v<F, GenMersenne>) {
          return run_cyclotomic(f.q, f.p, options);
        } else if constexpr (std::is_same_v<F, GenWagstaff>) {
          return run_cyclotomic(-f.q, f.p, options);
        } else if constexpr (std::is_same_v<F, ThreeTimesPow>) {
          return run_three_pow(f, options);
        } else if constexpr (std::is_same_v<F, Cubic>) {
          return run_cubic(f, options);
        } else if constexpr (std::is_same_v<F, Riesel>) {
          return run_riesel(f, options);
        } else if constexpr (std::is_same_v<F, TwelveQ>) {
          return run_twelve_q(f, options);
        } else if constexpr (std::is_same_v<F, Proth>) {
          return proth_test(f.k, f.n, options.proth_base_cap, options.base);
        } else {
          return run_fermat(f, options);
        }
      },
      spec);
}

}  // namespace chebprime
