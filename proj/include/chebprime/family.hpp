#pragma once

// Certifiers for special number families. Every family computes its Jacobi
// symbols directly and evaluates w^((Q-eps)/2) in the form suited to Q.

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "chebprime/primality.hpp"

namespace chebprime {

namespace family {

struct Mersenne {
  std::uint64_t p;  // 2^p - 1
};
struct Wagstaff {
  std::uint64_t p;  // (2^p + 1) / 3
};
struct GenMersenne {
  std::int64_t q;
  std::uint64_t p;  // Phi_p(q)
};
struct GenWagstaff {
  std::int64_t q;
  std::uint64_t p;  // Phi_p(-q)
};
struct ThreeTimesPow {
  std::uint64_t n;
  int sign;  // 3*2^n + sign
};
struct Cubic {
  std::uint64_t p;
  int sign;  // -1: (3^p - 1)/2, +1: (3^p + 1)/4
};
/// r*2^n - 1 with r odd, squarefree, prime to 3 and n of the parity that
/// makes the value 1 mod 3.
struct Riesel {
  std::uint64_t r;
  std::uint64_t n;
};
struct TwelveQ {
  std::uint64_t q;
  std::uint64_t n;  // 12 q^n + 1
};
struct Proth {
  Int k;
  std::uint64_t n;  // k*2^n + 1
};
struct Fermat {
  std::uint64_t n;  // 2^(2^n) + 1
};

}  // namespace family

using FamilySpec = std::variant<family::Mersenne, family::Wagstaff, family::GenMersenne, family::GenWagstaff,
                                family::ThreeTimesPow, family::Cubic, family::Riesel, family::TwelveQ,
                                family::Proth, family::Fermat>;

struct FamilyOptions {
  std::optional<Int> base;
  bool sufficiency = false;
  unsigned proth_base_cap = kDefaultProthBaseCap;
};

std::string_view family_name(const FamilySpec& spec);

/// The integer under test; throws std::invalid_argument for invalid parameters.
Int family_target(const FamilySpec& spec);

Verdict family_test(const FamilySpec& spec, const FamilyOptions& options = {});

}  // namespace chebprime
