#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "chebprime/cli.hpp"
#include "chebprime/family.hpp"
#include "chebprime/search.hpp"

namespace chebprime::cli {

namespace {

Int to_int(std::int64_t v) { return Int(static_cast<long>(v)); }

bool oracle_prime(const Int& n) {
  return n >= 2 && trial_division_oracle(n).status == OracleStatus::Prime;
}

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit) {
  std::vector<bool> sieve(limit + 1, true);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!sieve[i]) continue;
    if (i > 2) out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return out;
}

Record profile_json(const std::vector<Int>& entries) {
  Record arr = Record::array();
  for (const auto& e : entries) arr.push_back(to_string(e));
  return arr;
}

}  // namespace

SuiteReport verify_theorem1(const VerifyRanges& r) {
  SuiteReport rep;
  rep.suite = "theorem1";
  for (std::int64_t q = r.q_lo; q <= r.q_hi; ++q) {
    if (q >= -1 && q <= 1) continue;
    for (std::uint64_t p : odd_primes_up_to(r.p_max)) {
      const Int phi = cyclotomic_value(q, p);
      if (phi < 3 || !oracle_prime(phi)) {
        ++rep.skipped;
        continue;
      }
      for (std::int64_t a = r.a_lo; a <= r.a_hi; ++a) {
        if (a >= -1 && a <= 1) continue;
        if (gcd(to_int(a * a - 1), phi) != 1) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        const Theorem1Result t = theorem1_check(q, p, to_int(a));
        if (!t.holds()) {
          rep.violations.push_back({{"q", std::to_string(q)},
                                    {"p", std::to_string(p)},
                                    {"a", std::to_string(a)},
                                    {"phi", to_string(phi)},
                                    {"t_holds", t.t_holds},
                                    {"u_holds", t.u_holds}});
        }
      }
    }
  }
  return rep;
}

SuiteReport verify_modsquare(const VerifyRanges& r) {
  SuiteReport rep;
  rep.suite = "modsquare";
  for (std::uint64_t p : odd_primes_up_to(r.modsquare_qmax == 0 ? 0 : r.modsquare_qmax - 1)) {
    const Int q(static_cast<unsigned long>(p));
    const OddModulus modulus(q);
    for (std::int64_t a = r.modsquare_a_lo; a <= r.modsquare_a_hi; ++a) {
      if (gcd(to_int(a * a - 1), q) != 1) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (!mod_square_check(modulus, to_int(a))) {
        rep.violations.push_back({{"Q", to_string(q)}, {"a", std::to_string(a)}});
      }
    }
  }
  return rep;
}

SuiteReport verify_proth_oracle(const VerifyRanges& r) {
  SuiteReport rep;
  rep.suite = "proth-oracle";
  std::uint64_t inconclusive = 0;
  for (std::uint64_t n = 1; (std::uint64_t{1} << n) + 1 < r.proth_limit && n < 62; ++n) {
    const std::uint64_t two_n = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < two_n && k * two_n + 1 < r.proth_limit; k += 2) {
      const Int value(static_cast<unsigned long>(k * two_n + 1));
      if (is_perfect_square(value).is_square) {
        ++rep.skipped;
        continue;
      }
      const Verdict v = proth_test(Int(static_cast<unsigned long>(k)), n, r.proth_cap);
      if (v.status == VerdictStatus::Inconclusive) {
        ++inconclusive;
        continue;
      }
      ++rep.checked;
      const bool test_prime = v.status == VerdictStatus::ProvedPrime;
      if (test_prime != oracle_prime(value)) {
        rep.violations.push_back({{"N", to_string(value)},
                                  {"k", std::to_string(k)},
                                  {"n", std::to_string(n)},
                                  {"verdict", std::string(to_string(v.status))}});
      }
    }
  }
  rep.details["inconclusive"] = inconclusive;
  return rep;
}

SuiteReport verify_profiles() {
  // Reference base-2 strong-test profiles, with -1 written as -1.
  struct Expected {
    unsigned long q;
    std::vector<long> profile;
  };
  static const std::vector<Expected> kExpected = {
      {989, {1}},
      {2701, {0, -1}},
      {10609, {9083, 0, -1, 1}},
      {11041, {0, -1, 1, 1, 1}},
      {15505, {8416, 4431, 8861, 1}},
      {18721, {14063, 17370, 18527, 387, 1}},
      {18817, {18791, 1301, 18720, 0, -1, 1}},
  };
  SuiteReport rep;
  rep.suite = "profiles";
  Record rows = Record::array();
  for (const auto& e : kExpected) {
    const Int q(e.q);
    std::vector<Int> want;
    for (long v : e.profile) want.push_back(v < 0 ? Int(q + v) : Int(v));
    const ProfileResult got = evaluate_profile(Int(2), OddModulus(q));
    const bool strong = !profile_rule_violation(got.profile, q).has_value();
    ++rep.checked;
    Record row = {{"Q", to_string(q)},
                  {"expected", profile_json(want)},
                  {"computed", profile_json(got.profile.entries)},
                  {"match", got.profile.entries == want},
                  {"strong_pass", strong}};
    if (got.profile.entries != want) rep.violations.push_back(row);
    rows.push_back(std::move(row));
  }
  rep.details["profiles"] = std::move(rows);
  return rep;
}

SuiteReport verify_weak_universal(const VerifyRanges& r) {
  SuiteReport rep;
  rep.suite = "weak-universal";
  const auto rows = weak_universal_scan(r.weak_limit);
  Record found = Record::array();
  std::set<Int> scanned;
  for (const auto& row : rows) {
    ++rep.checked;
    found.push_back(to_string(row.q));
    scanned.insert(row.q);
    if (!row.fails_all_strong()) {
      Record bases = Record::array();
      for (const auto& [a, pass] : row.strong_results) {
        if (pass) bases.push_back(to_string(a));
      }
      rep.violations.push_back({{"Q", to_string(row.q)}, {"strong_pass_bases", bases}});
    }
  }
  rep.details["weak_universal"] = std::move(found);

  if (!r.oeis_file.empty()) {
    std::ifstream in(r.oeis_file);
    if (!in) throw std::invalid_argument("cannot open " + r.oeis_file);
    const std::vector<Int> known = read_integer_list(in);
    std::uint64_t cross_checked = 0;
    for (const Int& q : known) {
      if (q < 9 || mpz_even_p(q.get_mpz_t())) continue;
      ++cross_checked;
      if (q <= Int(static_cast<unsigned long>(r.weak_limit)) && !scanned.contains(q)) {
        rep.violations.push_back({{"Q", to_string(q)}, {"issue", "listed but not found by scan"}});
      }
      const OddModulus modulus(q);
      for (unsigned a = 2; a <= 10; ++a) {
        if (strong_test(modulus, Int(a)).verdict.passed()) {
          rep.violations.push_back({{"Q", to_string(q)}, {"issue", "strong pass"}, {"base", std::to_string(a)}});
        }
      }
    }
    rep.details["oeis_cross_checked"] = cross_checked;
  }
  return rep;
}

}  // namespace chebprime::cli
