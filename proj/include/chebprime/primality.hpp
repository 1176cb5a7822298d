#pragma once

// Chebyshev primality and pseudoprimality tests.
//
// For an odd prime Q with gcd(Q, a^2-1) = 1, put eps = (a^2-1 | Q) and
// delta = (2(a+1) | Q). Then w^((Q-eps)/2) == delta, i.e.
//
//   T_{(Q-eps)/2}(a) == delta,   U_{(Q-eps)/2 - 1}(a) == 0   (mod Q),
//
// and the T congruence even holds mod Q^2. Composites passing both
// congruences are Chebyshev pseudoprimes to base a.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chebprime/arith.hpp"
#include "chebprime/chebkernel.hpp"

namespace chebprime {

/// gcd(a^2-1, Q) > 1. When 1 < witness < Q this proves Q composite.
class SharedFactorError : public std::runtime_error {
 public:
  SharedFactorError(Int witness, Int modulus);
  const Int& witness() const noexcept { return witness_; }
  bool proper() const { return witness_ > 1 && witness_ < modulus_; }

 private:
  Int witness_;
  Int modulus_;
};

/// A hypothesis of the requested test does not hold for the given input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SymbolPair {
  int epsilon = 0;
  int delta = 0;
  friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
};

/// Strong-test residue chain [T_{Q1}, T_{2 Q1}, ..., T_{2^t Q1}] with
/// (Q-eps)/2 = 2^t Q1, Q1 odd.
struct Profile {
  std::vector<Int> entries;
};

enum class VerdictStatus { ProvedPrime, ProvedComposite, ProbablePrime, Inconclusive };

enum class Reason {
  CongruencePass,
  FailedTCongruence,
  FailedUCongruence,
  SharedFactor,
  PerfectSquare,
  ProfileRule,
  DegenerateBase,
  OrderCertified,
  OrderUndetermined,
  NoQualifyingBase,
  LucasLehmer,
  SufficiencyPassed,
  SufficiencyFailed,
  SufficiencyHypothesisUnmet,
};

std::string_view to_string(VerdictStatus status);
std::string_view to_string(Reason reason);

struct Certificate {
  std::optional<Int> base;
  std::optional<SymbolPair> symbols;
  std::optional<Profile> profile;
  std::optional<Int> witness;
  /// Multiplicative order of w established by a sufficiency argument.
  std::optional<Int> order;
  /// Family Lucas-Lehmer style sequence value s_index mod Q.
  std::optional<Int> sequence_value;
  std::optional<std::uint64_t> sequence_index;
  /// Named residues that decided the verdict, e.g. {"T_{4q^n}", 30}.
  std::vector<std::pair<std::string, Int>> residues;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  Reason reason = Reason::CongruencePass;
  Certificate certificate;

  bool passed() const {
    return status == VerdictStatus::ProvedPrime || status == VerdictStatus::ProbablePrime;
  }
};

/// (eps, delta). Throws SharedFactorError if either symbol vanishes.
SymbolPair symbols(const Int& a, const OddModulus& modulus);

/// Raw evaluation of both congruences, without any square pre-filter.
struct CongruenceResult {
  SymbolPair symbols;
  Int half_exponent;  // (Q - eps) / 2
  UnitRing::Elem power;  // w^half_exponent
  bool t_holds = false;
  bool u_holds = false;
  bool passes() const { return t_holds && u_holds; }
};

CongruenceResult evaluate_congruence(const Int& a, const OddModulus& modulus);

/// Profile of w^(Q1), squared t times, with the congruence result at the end.
struct ProfileResult {
  CongruenceResult congruence;
  Profile profile;
};

ProfileResult evaluate_profile(const Int& a, const OddModulus& modulus);

/// Index of the first entry breaking "1 only after +-1, -1 only after 0";
/// entry 0 is never checked.
std::optional<std::size_t> profile_rule_violation(const Profile& profile, const Int& modulus);

Verdict chebyshev_test(const OddModulus& modulus, const Int& a);

struct StrongResult {
  Verdict verdict;
  Profile profile;
};

StrongResult strong_test(const OddModulus& modulus, const Int& a);

/// T_Q(a) == a (mod Q).
bool weak_test(const OddModulus& modulus, const Int& a);

/// T_{(Q-eps)/2}(a) == delta (mod Q^2). Meaningful for prime Q.
bool mod_square_check(const OddModulus& modulus, const Int& a);

/// Phi_p(q) = (q^p - 1)/(q - 1); q may be negative.
Int cyclotomic_value(std::int64_t q, std::uint64_t p);

struct Theorem1Result {
  Int phi;
  int epsilon = 0;
  Int t_lhs;    // T_{q^p}(a)
  Int t_rhs;    // T_{q+eps-1}(a)
  Int u_value;  // U_{q^p - eps(q-1) - 2}(a)
  bool t_holds = false;
  bool u_holds = false;
  bool holds() const { return t_holds && u_holds; }
};

/// Both congruences T_{q^p}(a) == T_{q+eps-1}(a) and
/// U_{q^p - eps(q-1) - 2}(a) == 0 modulo Phi_p(q).
Theorem1Result theorem1_check(std::int64_t q, std::uint64_t p, const Int& a);

using Factorization = std::vector<std::pair<Int, unsigned>>;

/// Certifies primality from the full factorization of Q - eps, requiring
/// delta = -1. Inconclusive means another base should be tried.
Verdict order_certify(const OddModulus& modulus, const Int& a, const Factorization& factors);

inline constexpr unsigned kDefaultProthBaseCap = 200;

/// N = k*2^n + 1 with odd k < 2^n. Searches a = 2..base_cap for eps = 1,
/// delta = -1 unless a base is given.
Verdict proth_test(const Int& k, std::uint64_t n, unsigned base_cap = kDefaultProthBaseCap,
                   std::optional<Int> base = std::nullopt);

}  // namespace chebprime
