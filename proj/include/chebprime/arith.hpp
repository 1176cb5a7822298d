#pragma once

// Integer utilities shared by every other module: the multiprecision type,
// odd moduli (optionally tagged with a k*2^n+c shape for fast reduction),
// Jacobi symbols, square detection and a naive trial-division oracle that
// the tests use as independent ground truth.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace chebprime {

using Int = mpz_class;

/// Parses a decimal integer (optional leading '-'); throws std::invalid_argument
/// on anything else.
Int parse_int(std::string_view text);

inline std::string to_string(const Int& v) { return v.get_str(10); }

/// Q = k*2^n + c with k odd, c = +1 or -1.
struct ModulusShape {
  std::uint64_t k = 1;
  std::uint64_t n = 0;
  int c = -1;

  Int value() const;
  /// Throws std::invalid_argument when the descriptor is malformed.
  void validate() const;

  static ModulusShape mersenne(std::uint64_t p) { return {1, p, -1}; }
};

class OddModulus {
 public:
  explicit OddModulus(Int value);
  /// The shape must evaluate to `value`; it only enables the folding
  /// reduction and never changes results.
  OddModulus(Int value, ModulusShape shape);

  static OddModulus from_shape(const ModulusShape& shape);

  const Int& value() const noexcept { return value_; }
  const std::optional<ModulusShape>& shape() const noexcept { return shape_; }

  /// x mod Q into [0, Q). Accepts negative x.
  void reduce(Int& x) const;

 private:
  Int value_;
  std::optional<ModulusShape> shape_;
};

/// Jacobi symbol (a | n) for odd n >= 1. Throws std::invalid_argument otherwise.
int jacobi(const Int& a, const Int& n);

struct SquareCheck {
  bool is_square = false;
  std::optional<Int> root;
};

SquareCheck is_perfect_square(const Int& n);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

Int gcd(const Int& a, const Int& b);

/// x mod Q for Q of the given shape, by folding on the 2^n boundary.
/// Agrees with generic reduction for every x >= 0.
Int reduce_special(const Int& x, const ModulusShape& form);

enum class OracleStatus { Prime, Composite, Unknown };

struct OracleVerdict {
  OracleStatus status = OracleStatus::Unknown;
  std::optional<Int> witness_factor;
};

inline constexpr std::uint64_t kDefaultOracleDivisorCap = std::uint64_t{1} << 32;

/// Trial division by every integer d in [2, min(bound, isqrt(n))]. With no
/// bound, the search is limited to kDefaultOracleDivisorCap divisors and
/// reports Unknown past that.
OracleVerdict trial_division_oracle(const Int& n, std::optional<Int> bound = std::nullopt);

/// Trial division first; when that is inconclusive, falls back to GMP's
/// BPSW/Miller-Rabin test. Neither path touches the Chebyshev machinery.
bool reference_is_prime(const Int& n);

/// Prime factorization with multiplicity, ascending. Trial division, so only
/// meant for n up to roughly 1e12.
std::vector<std::pair<Int, unsigned>> trial_factor(Int n);

/// Flattened ascending prime factors with repetition, e.g. 10609 -> {103, 103}.
std::vector<Int> prime_factors_flat(const Int& n);

bool is_squarefree(const std::vector<std::pair<Int, unsigned>>& factorization);

}  // namespace chebprime
