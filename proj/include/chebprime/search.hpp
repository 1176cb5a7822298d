#pragma once

// Batch scans over ranges of candidates. Range scans are split into shards
// of kShardSize candidates that run on a worker pool; shard results are
// concatenated in shard order, so output never depends on the thread count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "chebprime/primality.hpp"

namespace chebprime {

inline constexpr std::uint64_t kShardSize = 10000;

/// CHEBPRIME_THREADS if set and positive, else the hardware concurrency.
unsigned default_thread_count();

struct PseudoprimeHit {
  Int q;
  Int base;
  std::vector<Int> factors;  // ascending, with repetition
  bool strong_pass = false;
  Profile profile;
};

/// Odd composites Q <= limit, gcd(Q, a^2-1) = 1, passing both congruences
/// (and the profile rule when strong_only). Perfect squares are included:
/// the scan bypasses the square pre-filter of chebyshev_test.
std::vector<PseudoprimeHit> find_pseudoprimes(const Int& a, std::uint64_t limit, bool strong_only,
                                              unsigned threads = 0);

struct CoverSpec {
  Int k;
  std::vector<std::uint64_t> primes;
  std::uint64_t period = 0;
};

struct CoverReport {
  bool verified = false;
  std::vector<std::uint64_t> orders;  // ord_p(2) per listed prime
  std::optional<std::uint64_t> uncovered_n;
  std::optional<std::uint64_t> period_mismatch_prime;
};

CoverReport sierpinski_cover_verify(const CoverSpec& spec);

struct SierpinskiScanRow {
  std::uint64_t n = 0;
  Int value;  // N_n = k*2^n + 1
  bool perfect_square = false;
  bool shared_factor = false;
  int epsilon = 0;
  int delta = 0;
  bool t_is_one = false;     // T_{(N-1)/2}(a) == 1 mod N
  bool u_is_zero = false;    // U_{(N-1)/2 - 1}(a) == 0 mod N
  bool t_one_mod_square = false;  // T_{(N-1)/2}(a) == 1 mod N^2
  bool oracle_prime = false;
  bool passes() const { return !perfect_square && !shared_factor && t_is_one && u_is_zero; }
};

std::vector<SierpinskiScanRow> sierpinski_cheb_scan(const Int& k, const Int& a, std::uint64_t n_min,
                                                    std::uint64_t n_max);

inline constexpr std::uint64_t kPrimitiveDivisorMaxIndex = 40;

struct PrimitiveDivisorRow {
  std::uint64_t n = 0;
  Int value;                    // U_n(a), exact
  std::optional<Int> primitive; // smallest primitive prime divisor; empty = violation
};

std::vector<PrimitiveDivisorRow> primitive_divisor_check(const Int& a, std::uint64_t n_max);

struct DipRow {
  std::uint64_t p = 0;
  Int phi;
  int epsilon = 0;
  Int residue;   // 2 T_{q^p}(a) - 2 T_{q+eps-1}(a) mod Phi, in [0, Phi)
  Int centered;  // residue in (-Phi/2, Phi/2]
  std::size_t residue_digits = 1;
  bool phi_is_prime = false;
};

std::vector<DipRow> digit_dip_scan(std::int64_t q, const Int& a, std::uint64_t p_max);

inline constexpr std::uint64_t kNonsquarefreeScanLimit = 1000000;

struct NonsquarefreeHit {
  Int q;
  std::vector<Int> bases;
  Factorization factorization;
  bool prime_square = false;
};

std::vector<NonsquarefreeHit> nonsquarefree_scan(std::uint64_t limit, const std::vector<Int>& bases,
                                                 unsigned threads = 0);

struct TImpliesUReport {
  std::uint64_t t_passes = 0;  // squarefree composites passing the T half
  std::vector<std::pair<Int, Int>> violations;  // (Q, base) with T but not U
};

/// Squarefree odd composites Q <= limit: the T half implies the U half.
TImpliesUReport squarefree_t_implies_u_scan(std::uint64_t limit, const std::vector<Int>& bases,
                                            unsigned threads = 0);

struct WeakUniversalRow {
  Int q;
  std::vector<std::pair<Int, bool>> strong_results;  // (base, strong pass)
  bool fails_all_strong() const;
};

/// Odd composites Q <= limit with T_Q(a) == a (mod Q) for every a in [0, Q),
/// each checked against the strong test for bases [base_lo, base_hi].
std::vector<WeakUniversalRow> weak_universal_scan(std::uint64_t limit, std::uint64_t base_lo = 2,
                                                  std::uint64_t base_hi = 10, unsigned threads = 0);

/// Newline-separated decimal integers; blank lines and '#' comments skipped.
std::vector<Int> read_integer_list(std::istream& in);

}  // namespace chebprime
