#pragma once

// Command-line front end. Every record is one JSON object per line (or a CSV
// row for the scan commands); all integers are decimal strings.
//
// Exit codes: 0 pass / prime / verified, 1 proved composite / rejected,
// 2 usage or input error, 3 inconclusive.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace chebprime::cli {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kExitOk = 0, kExitRejected = 1, kExitUsage = 2, kExitInconclusive = 3 };

using Record = nlohmann::ordered_json;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteReport {
  std::string suite;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::vector<Record> violations;
  Record details = Record::object();
};

struct VerifyRanges {
  std::int64_t q_lo = -6, q_hi = 6;
  std::uint64_t p_max = 13;
  std::int64_t a_lo = 2, a_hi = 6;
  std::uint64_t modsquare_qmax = 10000;
  std::int64_t modsquare_a_lo = 2, modsquare_a_hi = 20;
  std::uint64_t proth_limit = 1000000;
  unsigned proth_cap = 200;
  std::uint64_t weak_limit = 5000;
  std::string oeis_file;  // empty = skip the A175530 cross-check
};

SuiteReport verify_theorem1(const VerifyRanges& r);
SuiteReport verify_modsquare(const VerifyRanges& r);
SuiteReport verify_proth_oracle(const VerifyRanges& r);
SuiteReport verify_profiles();
SuiteReport verify_weak_universal(const VerifyRanges& r);

}  // namespace chebprime::cli
