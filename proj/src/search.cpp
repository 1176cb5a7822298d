#include "chebprime/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <istream>
#include <string>
#include <thread>

namespace chebprime {

unsigned default_thread_count() {
  if (const char* env = std::getenv("CHEBPRIME_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs fn(lo, hi) over [first, last] in shards of kShardSize and concatenates
// the per-shard outputs in ascending shard order.
template <class T, class Fn>
std::vector<T> run_shards(std::uint64_t first, std::uint64_t last, unsigned threads, Fn fn) {
  if (last < first) return {};
  const std::uint64_t count = (last - first) / kShardSize + 1;
  std::vector<std::vector<T>> slots(count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      const std::uint64_t lo = first + i * kShardSize;
      const std::uint64_t hi = std::min(last, lo + kShardSize - 1);
      slots[i] = fn(lo, hi);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads == 0 ? default_thread_count() : threads,
                                                     static_cast<unsigned>(count)));
  std::vector<std::jthread> pool;
  pool.reserve(n - 1);
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<T> out;
  for (auto& s : slots) {
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return out;
}

Int to_int(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

bool is_prime_u64(std::uint64_t v) {
  return v >= 2 && trial_division_oracle(to_int(v)).status == OracleStatus::Prime;
}

// Smallest prime factor of n > 1 (trial division, then Brent's rho).
Int pollard_brent(const Int& n, unsigned long c) {
  Int y = 2, x, q = 1, g = 1, ys, t;
  const unsigned long block = 128;
  unsigned long r = 1;
  auto f = [&](Int& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) f(y);
    for (unsigned long k = 0; k < r && g == 1; k += block) {
      ys = y;
      for (unsigned long i = 0; i < std::min(block, r - k); ++i) {
        f(y);
        t = abs(x - y);
        q = q * t;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
    }
    r *= 2;
  }
  if (g == n) {
    do {
      f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

Int smallest_prime_factor(const Int& n) {
  if (n < 2) throw std::invalid_argument("smallest_prime_factor: n must be >= 2");
  const OracleVerdict v = trial_division_oracle(n, Int(100000));
  if (v.status == OracleStatus::Composite) return *v.witness_factor;
  if (v.status == OracleStatus::Prime || mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) return n;
  for (unsigned long c = 1;; ++c) {
    const Int d = pollard_brent(n, c);
    if (d != n) return std::min(smallest_prime_factor(d), smallest_prime_factor(n / d));
  }
}

std::uint64_t pow2_mod(std::uint64_t e, std::uint64_t p) {
  unsigned __int128 acc = 1, b = 2 % p;
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint64_t>(acc);
}

std::size_t decimal_digits(const Int& v) { return Int(abs(v)).get_str(10).size(); }

}  // namespace

std::vector<PseudoprimeHit> find_pseudoprimes(const Int& a, std::uint64_t limit, bool strong_only,
                                              unsigned threads) {
  if (limit < 9) throw std::invalid_argument("find_pseudoprimes: limit must be >= 9");
  if (a == 0 || a == 1 || a == -1) throw std::invalid_argument("find_pseudoprimes: base must not be 0 or +-1");
  const Int disc = a * a - 1;
  return run_shards<PseudoprimeHit>(3, limit, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<PseudoprimeHit> hits;
    for (std::uint64_t v = lo | 1; v <= hi; v += 2) {
      const Int q = to_int(v);
      if (gcd(q, disc) != 1) continue;
      const OddModulus modulus(q);
      ProfileResult pr = evaluate_profile(a, modulus);
      if (!pr.congruence.passes()) continue;
      if (is_prime_u64(v)) continue;
      const bool strong = !profile_rule_violation(pr.profile, q).has_value();
      if (strong_only && !strong) continue;
      hits.push_back({q, a, prime_factors_flat(q), strong, std::move(pr.profile)});
    }
    return hits;
  });
}

CoverReport sierpinski_cover_verify(const CoverSpec& spec) {
  if (mpz_even_p(spec.k.get_mpz_t())) throw std::invalid_argument("sierpinski_cover_verify: k must be odd");
  if (spec.period == 0) throw std::invalid_argument("sierpinski_cover_verify: period must be positive");
  if (spec.primes.empty()) throw std::invalid_argument("sierpinski_cover_verify: empty covering set");
  CoverReport report;
  for (std::uint64_t p : spec.primes) {
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("sierpinski_cover_verify: " + std::to_string(p) + " is not an odd prime");
    std::uint64_t order = 1;
    for (std::uint64_t x = 2 % p; x != 1; x = (x * 2) % p) ++order;
    report.orders.push_back(order);
    if (spec.period % order != 0 && !report.period_mismatch_prime) report.period_mismatch_prime = p;
  }
  for (std::uint64_t n = 1; n <= spec.period && !report.uncovered_n; ++n) {
    bool covered = false;
    for (std::uint64_t p : spec.primes) {
      const std::uint64_t k_mod = mpz_fdiv_ui(spec.k.get_mpz_t(), p);
      if ((k_mod * pow2_mod(n, p) + 1) % p == 0) {
        covered = true;
        break;
      }
    }
    if (!covered) report.uncovered_n = n;
  }
  report.verified = !report.uncovered_n && !report.period_mismatch_prime;
  return report;
}

std::vector<SierpinskiScanRow> sierpinski_cheb_scan(const Int& k, const Int& a, std::uint64_t n_min,
                                                    std::uint64_t n_max) {
  if (k < 1 || mpz_even_p(k.get_mpz_t())) throw std::invalid_argument("sierpinski_cheb_scan: k must be odd and positive");
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("sierpinski_cheb_scan: invalid n range");
  std::vector<SierpinskiScanRow> rows;
  for (std::uint64_t n = n_min; n <= n_max; ++n) {
    SierpinskiScanRow row;
    row.n = n;
    row.value = k;
    mpz_mul_2exp(row.value.get_mpz_t(), row.value.get_mpz_t(), n);
    row.value += 1;
    row.perfect_square = is_perfect_square(row.value).is_square;
    row.oracle_prime = reference_is_prime(row.value);
    const OddModulus modulus = mpz_fits_ulong_p(k.get_mpz_t()) != 0
                                   ? OddModulus(row.value, ModulusShape{k.get_ui(), n, 1})
                                   : OddModulus(row.value);
    if (gcd(a * a - 1, row.value) != 1) {
      row.shared_factor = true;
      rows.push_back(std::move(row));
      continue;
    }
    row.epsilon = jacobi(a * a - 1, row.value);
    row.delta = jacobi(2 * (a + 1), row.value);
    // (N-1)/2 = k*2^(n-1)
    const UnitRing ring(a, modulus);
    const UnitRing::Elem x = ring.unit_power(exponent::ProthForm{k, n - 1, 0});
    row.t_is_one = x.t == 1;
    row.u_is_zero = sgn(x.u) == 0;
    // T_k(s_{n-1}) with s_0 = a, s_{j+1} = 2 s_j^2 - 1, modulo N^2.
    const OddModulus square(row.value * row.value);
    row.t_one_mod_square = cheb_T_ladder(compose_iterate(a, 2, n - 1, square), k, square) == 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PrimitiveDivisorRow> primitive_divisor_check(const Int& a, std::uint64_t n_max) {
  if (a == 0 || a == 1 || a == -1) throw std::invalid_argument("primitive_divisor_check: base must not be 0 or +-1");
  if (n_max < 2 || n_max > kPrimitiveDivisorMaxIndex) {
    throw std::invalid_argument("primitive_divisor_check: n_max must be in [2, 40]");
  }
  // U_0 = 1, U_1 = 2a, U_{n+1} = 2a U_n - U_{n-1}.
  std::vector<Int> u{Int(1), Int(2 * a)};
  for (std::uint64_t n = 2; n <= n_max; ++n) u.push_back(2 * a * u[n - 1] - u[n - 2]);

  std::vector<PrimitiveDivisorRow> rows;
  Int earlier = abs(a * (a * a - 1)) * abs(u[0]) * abs(u[1]);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    PrimitiveDivisorRow row;
    row.n = n;
    row.value = u[n];
    Int part = abs(u[n]);
    for (Int g = gcd(part, earlier); g != 1 && sgn(part) != 0; g = gcd(part, earlier)) part /= g;
    if (part > 1) row.primitive = smallest_prime_factor(part);
    earlier *= abs(u[n]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<DipRow> digit_dip_scan(std::int64_t q, const Int& a, std::uint64_t p_max) {
  if (std::llabs(q) < 2) throw std::invalid_argument("digit_dip_scan: |q| must be at least 2");
  if (a == 0 || a == 1 || a == -1) throw std::invalid_argument("digit_dip_scan: base must not be 0 or +-1");
  std::vector<DipRow> rows;
  for (std::uint64_t p = 3; p <= p_max; p += 2) {
    if (!is_prime_u64(p)) continue;
    DipRow row;
    row.p = p;
    row.phi = cyclotomic_value(q, p);
    const OddModulus modulus(row.phi);
    row.epsilon = jacobi(a * a - 1, row.phi);
    const Int lhs = compose_iterate(a, q, p, modulus);
    const Int rhs = cheb_T(a, literal(Int(static_cast<long>(q + row.epsilon - 1))), modulus);
    row.residue = 2 * (lhs - rhs);
    modulus.reduce(row.residue);
    row.centered = row.residue;
    if (2 * row.centered > row.phi) row.centered -= row.phi;
    row.residue_digits = decimal_digits(row.centered);
    row.phi_is_prime = reference_is_prime(row.phi);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<NonsquarefreeHit> nonsquarefree_scan(std::uint64_t limit, const std::vector<Int>& bases,
                                                 unsigned threads) {
  if (limit > kNonsquarefreeScanLimit) throw std::invalid_argument("nonsquarefree_scan: limit must be <= 10^6");
  if (bases.empty()) throw std::invalid_argument("nonsquarefree_scan: no bases");
  if (limit < 9) return {};
  return run_shards<NonsquarefreeHit>(9, limit, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<NonsquarefreeHit> hits;
    for (std::uint64_t v = lo | 1; v <= hi; v += 2) {
      const Int q = to_int(v);
      Factorization f = trial_factor(q);
      if (is_squarefree(f)) continue;  // also skips primes
      const OddModulus modulus(q);
      NonsquarefreeHit hit{q, {}, {}, false};
      for (const Int& a : bases) {
        if (gcd(a * a - 1, q) != 1) continue;
        if (evaluate_congruence(a, modulus).passes()) hit.bases.push_back(a);
      }
      if (hit.bases.empty()) continue;
      hit.prime_square = f.size() == 1 && f.front().second == 2;
      hit.factorization = std::move(f);
      hits.push_back(std::move(hit));
    }
    return hits;
  });
}

TImpliesUReport squarefree_t_implies_u_scan(std::uint64_t limit, const std::vector<Int>& bases,
                                            unsigned threads) {
  struct Item {
    Int q;
    Int base;
    bool u_holds;
  };
  if (limit < 9) return {};
  auto items = run_shards<Item>(9, limit, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<Item> out;
    for (std::uint64_t v = lo | 1; v <= hi; v += 2) {
      const Int q = to_int(v);
      const OddModulus modulus(q);
      std::optional<bool> eligible;
      for (const Int& a : bases) {
        if (gcd(a * a - 1, q) != 1) continue;
        const CongruenceResult c = evaluate_congruence(a, modulus);
        if (!c.t_holds) continue;
        if (!eligible) {
          const Factorization f = trial_factor(q);
          eligible = f.size() > 1 && is_squarefree(f);
        }
        if (*eligible) out.push_back({q, a, c.u_holds});
      }
    }
    return out;
  });
  TImpliesUReport report;
  for (auto& it : items) {
    ++report.t_passes;
    if (!it.u_holds) report.violations.emplace_back(it.q, it.base);
  }
  return report;
}

bool WeakUniversalRow::fails_all_strong() const {
  return std::none_of(strong_results.begin(), strong_results.end(), [](const auto& r) { return r.second; });
}

std::vector<WeakUniversalRow> weak_universal_scan(std::uint64_t limit, std::uint64_t base_lo,
                                                  std::uint64_t base_hi, unsigned threads) {
  if (limit < 9) return {};
  return run_shards<WeakUniversalRow>(9, limit, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<WeakUniversalRow> rows;
    for (std::uint64_t v = lo | 1; v <= hi; v += 2) {
      if (is_prime_u64(v)) continue;
      const Int q = to_int(v);
      const OddModulus modulus(q);
      // a = 0 and a = +-1 pass trivially for odd Q.
      bool universal = true;
      for (std::uint64_t a = 2; a + 2 <= v && universal; ++a) universal = weak_test(modulus, to_int(a));
      if (!universal) continue;
      WeakUniversalRow row{q, {}};
      for (std::uint64_t a = base_lo; a <= base_hi; ++a) {
        row.strong_results.emplace_back(to_int(a), strong_test(modulus, to_int(a)).verdict.passed());
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

std::vector<Int> read_integer_list(std::istream& in) {
  std::vector<Int> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(parse_int(std::string_view(line).substr(first, last - first + 1)));
  }
  return out;
}

}  // namespace chebprime
