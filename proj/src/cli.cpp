#include "chebprime/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "chebprime/family.hpp"
#include "chebprime/search.hpp"

namespace chebprime::cli {

namespace {

using Clock = std::chrono::steady_clock;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

Record header(std::string_view command) {
  return Record{{"schema_version", kSchemaVersion}, {"command", command}};
}

void emit(std::ostream& out, const Record& r) { out << r.dump() << '\n'; }

Int parse_flag(const std::string& name, const std::string& text) {
  try {
    return parse_int(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + name + ": malformed integer '" + text + "'");
  }
}

std::int64_t parse_i64(const std::string& name, const std::string& text) {
  const Int v = parse_flag(name, text);
  if (!mpz_fits_slong_p(v.get_mpz_t())) throw UsageError("--" + name + ": out of range");
  return v.get_si();
}

std::uint64_t parse_u64(const std::string& name, const std::string& text) {
  const std::int64_t v = parse_i64(name, text);
  if (v < 0) throw UsageError("--" + name + ": must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& name, const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--" + name + ": expected LO..HI, got '" + text + "'");
  const auto lo = parse_i64(name, text.substr(0, dots));
  const auto hi = parse_i64(name, text.substr(dots + 2));
  if (hi < lo) throw UsageError("--" + name + ": empty range");
  return {lo, hi};
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  return parts;
}

int exit_for(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::ProvedPrime:
    case VerdictStatus::ProbablePrime: return kExitOk;
    case VerdictStatus::ProvedComposite: return kExitRejected;
    case VerdictStatus::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

Record strings(const std::vector<Int>& values) {
  Record arr = Record::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

Record certificate_json(const Certificate& c) {
  Record r = Record::object();
  if (c.base) r["base"] = to_string(*c.base);
  if (c.witness) r["witness"] = to_string(*c.witness);
  if (c.order) r["order"] = to_string(*c.order);
  if (c.sequence_index) r["sequence_index"] = *c.sequence_index;
  if (c.sequence_value) r["sequence_value"] = to_string(*c.sequence_value);
  if (!c.residues.empty()) {
    Record res = Record::object();
    for (const auto& [name, value] : c.residues) res[name] = to_string(value);
    r["residues"] = std::move(res);
  }
  return r;
}

void add_symbols(Record& r, const std::optional<SymbolPair>& s) {
  if (!s) return;
  r["epsilon"] = s->epsilon;
  r["delta"] = s->delta;
}

// ---------------------------------------------------------------- test

struct TestArgs {
  std::string q;
  std::string base = "2";
  bool strong = false;
  bool weak = false;
  bool mod_square = false;
};

// A passing Q that trial division can show composite is reported as a
// pseudoprime candidate.
std::string pass_label(const Int& q) {
  const OracleVerdict v = trial_division_oracle(q, std::min(isqrt(q), Int(1000000)));
  return v.status == OracleStatus::Composite ? "pseudoprime-candidate" : "probable-prime";
}

int cmd_test(const TestArgs& args, std::ostream& out) {
  const Int q = parse_flag("Q", args.q);
  const Int a = parse_flag("base", args.base);
  if (q < 3 || mpz_even_p(q.get_mpz_t())) throw UsageError("Q must be odd and >= 3");
  const OddModulus modulus(q);

  int code = kExitOk;
  auto merge = [&code](int c) {
    if (c == kExitRejected || code == kExitRejected) {
      code = kExitRejected;
    } else if (c == kExitInconclusive) {
      code = kExitInconclusive;
    }
  };
  auto base_record = [&](std::string_view mode) {
    Record r = header("test");
    r["inputs"] = {{"Q", to_string(q)}, {"base", to_string(a)}, {"mode", mode}};
    return r;
  };
  auto verdict_fields = [&](Record& r, const Verdict& v) {
    add_symbols(r, v.certificate.symbols);
    r["result"] = v.passed() ? "pass" : "fail";
    r["verdict"] = v.passed() ? pass_label(q) : std::string(to_string(v.status));
    r["reason"] = to_string(v.reason);
    merge(exit_for(v.status));
  };

  const bool run_base = !args.strong && !args.weak && !args.mod_square;
  if (run_base) {
    const auto start = Clock::now();
    const Verdict v = chebyshev_test(modulus, a);
    Record r = base_record("base");
    verdict_fields(r, v);
    r["certificate"] = certificate_json(v.certificate);
    r["elapsed_ms"] = elapsed_ms(start);
    emit(out, r);
  }
  if (args.strong) {
    const auto start = Clock::now();
    const StrongResult s = strong_test(modulus, a);
    Record r = base_record("strong");
    verdict_fields(r, s.verdict);
    r["profile"] = strings(s.profile.entries);
    r["certificate"] = certificate_json(s.verdict.certificate);
    r["elapsed_ms"] = elapsed_ms(start);
    emit(out, r);
  }
  if (args.weak) {
    const auto start = Clock::now();
    const bool pass = weak_test(modulus, a);
    Record r = base_record("weak");
    r["result"] = pass ? "pass" : "fail";
    r["verdict"] = pass ? pass_label(q) : "proved-composite";
    r["reason"] = pass ? "congruence-pass" : "failed-weak-congruence";
    merge(pass ? kExitOk : kExitRejected);
    r["elapsed_ms"] = elapsed_ms(start);
    emit(out, r);
  }
  if (args.mod_square) {
    const auto start = Clock::now();
    Record r = base_record("mod-square");
    try {
      const SymbolPair s = symbols(a, modulus);
      const bool pass = mod_square_check(modulus, a);
      add_symbols(r, s);
      r["result"] = pass ? "pass" : "fail";
      r["verdict"] = pass ? pass_label(q) : "proved-composite";
      r["reason"] = pass ? "congruence-pass" : "failed-mod-square";
      merge(pass ? kExitOk : kExitRejected);
    } catch (const SharedFactorError& e) {
      r["result"] = "fail";
      r["verdict"] = e.proper() ? "proved-composite" : "inconclusive";
      r["reason"] = e.proper() ? "shared-factor" : "degenerate-base";
      r["certificate"] = {{"witness", to_string(e.witness())}};
      merge(e.proper() ? kExitRejected : kExitInconclusive);
    }
    r["elapsed_ms"] = elapsed_ms(start);
    emit(out, r);
  }
  return code;
}

// ---------------------------------------------------------------- family

struct FamilyArgs {
  std::string p, q, n, k, r, sign, base;
  bool sufficiency = false;
  std::string cap;
};

std::uint64_t need_u64(const std::string& name, const std::string& value) {
  if (value.empty()) throw UsageError("--" + name + " is required");
  return parse_u64(name, value);
}

int need_sign(const std::string& value) {
  if (value.empty()) throw UsageError("--sign is required");
  const std::int64_t s = parse_i64("sign", value);
  if (s != 1 && s != -1) throw UsageError("--sign must be +1 or -1");
  return static_cast<int>(s);
}

FamilySpec build_family(const std::string& name, const FamilyArgs& f) {
  using namespace family;
  if (name == "mersenne") return Mersenne{need_u64("p", f.p)};
  if (name == "wagstaff") return Wagstaff{need_u64("p", f.p)};
  if (name == "genmersenne") return GenMersenne{static_cast<std::int64_t>(need_u64("q", f.q)), need_u64("p", f.p)};
  if (name == "genwagstaff") return GenWagstaff{static_cast<std::int64_t>(need_u64("q", f.q)), need_u64("p", f.p)};
  if (name == "three-pow") return ThreeTimesPow{need_u64("n", f.n), need_sign(f.sign)};
  if (name == "cubic") return Cubic{need_u64("p", f.p), need_sign(f.sign)};
  if (name == "riesel") return Riesel{need_u64("r", f.r), need_u64("n", f.n)};
  if (name == "twelveq") return TwelveQ{need_u64("q", f.q), need_u64("n", f.n)};
  if (name == "proth") {
    if (f.k.empty()) throw UsageError("--k is required");
    return Proth{parse_flag("k", f.k), need_u64("n", f.n)};
  }
  if (name == "fermat") return Fermat{need_u64("n", f.n)};
  throw UsageError("unknown family '" + name + "'");
}

int cmd_family(const std::string& name, const FamilyArgs& args, std::ostream& out) {
  const auto start = Clock::now();
  const FamilySpec spec = build_family(name, args);
  FamilyOptions opt;
  if (!args.base.empty()) opt.base = parse_flag("base", args.base);
  opt.sufficiency = args.sufficiency;
  if (!args.cap.empty()) opt.proth_base_cap = static_cast<unsigned>(need_u64("cap", args.cap));

  Int target;
  try {
    target = family_target(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Verdict v = family_test(spec, opt);

  Record r = header("family");
  Record inputs = {{"family", name}};
  const std::pair<const char*, const std::string*> flags[] = {
      {"p", &args.p}, {"q", &args.q}, {"n", &args.n}, {"k", &args.k},
      {"r", &args.r}, {"sign", &args.sign}, {"base", &args.base}};
  for (const auto& [key, value] : flags) {
    if (!value->empty()) inputs[key] = to_string(parse_flag(key, *value));
  }
  inputs["sufficiency"] = args.sufficiency ? "true" : "false";
  r["inputs"] = std::move(inputs);
  if (mpz_sizeinbase(target.get_mpz_t(), 2) <= 4096) {
    r["target"] = to_string(target);
  }
  r["target_bits"] = mpz_sizeinbase(target.get_mpz_t(), 2);
  add_symbols(r, v.certificate.symbols);
  r["verdict"] = to_string(v.status);
  r["reason"] = to_string(v.reason);
  r["certificate"] = certificate_json(v.certificate);
  r["elapsed_ms"] = elapsed_ms(start);
  emit(out, r);
  return exit_for(v.status);
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string base = "2", limit, k, cover, period, q, pmax, nmin = "3", nmax, bases = "2";
  bool strong = false;
  std::string format = "jsonl";
  std::string out;
};

class RowWriter {
 public:
  RowWriter(std::ostream& out, bool csv, std::string kind, std::vector<std::string> columns)
      : out_(out), csv_(csv), kind_(std::move(kind)), columns_(std::move(columns)) {
    if (csv_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
      out_ << '\n';
    }
  }

  // `values` align with the CSV columns; `extra` only goes to JSONL.
  void row(const std::vector<std::string>& values, const Record& extra = Record::object()) {
    ++rows_;
    if (csv_) {
      for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
      out_ << '\n';
      return;
    }
    Record r = header("search");
    r["kind"] = kind_;
    for (std::size_t i = 0; i < values.size(); ++i) r[columns_[i]] = values[i];
    for (const auto& [key, value] : extra.items()) r[key] = value;
    emit(out_, r);
  }

  void summary(Record fields, std::int64_t ms, std::ostream& err) {
    Record r = header("search");
    r["kind"] = "summary";
    r["search"] = kind_;
    r["rows"] = rows_;
    for (const auto& [key, value] : fields.items()) r[key] = value;
    r["elapsed_ms"] = ms;
    if (csv_) {
      err << r.dump() << '\n';
    } else {
      emit(out_, r);
    }
  }

 private:
  std::ostream& out_;
  bool csv_;
  std::string kind_;
  std::vector<std::string> columns_;
  std::uint64_t rows_ = 0;
};

std::string join(const std::vector<Int>& values, char sep) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += to_string(values[i]);
  }
  return s;
}

std::string flag(bool b) { return b ? "true" : "false"; }

int cmd_search(const std::string& kind, const SearchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.format != "jsonl" && args.format != "csv") throw UsageError("--format must be csv or jsonl");
  const bool csv = args.format == "csv";
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw UsageError("cannot open --out file '" + args.out + "'");
  }
  std::ostream& sink = args.out.empty() ? out : file;
  const auto start = Clock::now();
  const unsigned threads = default_thread_count();

  if (kind == "pseudoprimes") {
    const Int a = parse_flag("base", args.base);
    const std::uint64_t limit = need_u64("limit", args.limit);
    std::vector<PseudoprimeHit> hits;
    try {
      hits = find_pseudoprimes(a, limit, args.strong, threads);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    RowWriter w(sink, csv, kind, {"Q", "base", "factors", "strong_pass", "profile"});
    for (const auto& h : hits) {
      w.row({to_string(h.q), to_string(h.base), join(h.factors, '*'), flag(h.strong_pass),
             join(h.profile.entries, ';')});
    }
    w.summary({{"base", to_string(a)}, {"limit", std::to_string(limit)}, {"strong_only", args.strong}},
              elapsed_ms(start), err);
    return kExitOk;
  }
  if (kind == "sierpinski-cover") {
    CoverSpec spec;
    if (args.k.empty()) throw UsageError("--k is required");
    spec.k = parse_flag("k", args.k);
    if (args.cover.empty()) throw UsageError("--cover is required");
    for (const auto& p : split_csv(args.cover)) spec.primes.push_back(parse_u64("cover", p));
    spec.period = need_u64("period", args.period);
    CoverReport rep;
    try {
      rep = sierpinski_cover_verify(spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    RowWriter w(sink, csv, kind, {"k", "cover", "period", "verified"});
    Record extra = Record::object();
    Record orders = Record::array();
    for (auto o : rep.orders) orders.push_back(std::to_string(o));
    extra["orders"] = std::move(orders);
    if (rep.uncovered_n) extra["uncovered_n"] = std::to_string(*rep.uncovered_n);
    if (rep.period_mismatch_prime) extra["period_mismatch_prime"] = std::to_string(*rep.period_mismatch_prime);
    w.row({to_string(spec.k), args.cover, std::to_string(spec.period), flag(rep.verified)}, extra);
    w.summary({{"verified", rep.verified}}, elapsed_ms(start), err);
    return rep.verified ? kExitOk : kExitRejected;
  }
  if (kind == "sierpinski-scan") {
    if (args.k.empty()) throw UsageError("--k is required");
    const Int k = parse_flag("k", args.k);
    const Int a = parse_flag("base", args.base == "2" ? std::string("3") : args.base);
    const std::uint64_t lo = need_u64("nmin", args.nmin);
    const std::uint64_t hi = need_u64("nmax", args.nmax);
    std::vector<SierpinskiScanRow> rows;
    try {
      rows = sierpinski_cheb_scan(k, a, lo, hi);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    RowWriter w(sink, csv, kind,
                {"n", "N", "perfect_square", "shared_factor", "epsilon", "delta", "t_is_one", "u_is_zero",
                 "t_one_mod_square", "passes", "oracle_prime"});
    std::uint64_t passes = 0;
    for (const auto& r : rows) {
      passes += r.passes();
      w.row({std::to_string(r.n), to_string(r.value), flag(r.perfect_square), flag(r.shared_factor),
             std::to_string(r.epsilon), std::to_string(r.delta), flag(r.t_is_one), flag(r.u_is_zero),
             flag(r.t_one_mod_square), flag(r.passes()), flag(r.oracle_prime)});
    }
    w.summary({{"k", to_string(k)}, {"base", to_string(a)}, {"passes", passes}}, elapsed_ms(start), err);
    return kExitOk;
  }
  if (kind == "primitive-divisors") {
    const Int a = parse_flag("base", args.base);
    const std::uint64_t n_max = need_u64("nmax", args.nmax.empty() ? std::string("40") : args.nmax);
    std::vector<PrimitiveDivisorRow> rows;
    try {
      rows = primitive_divisor_check(a, n_max);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    RowWriter w(sink, csv, kind, {"n", "U_n", "primitive_divisor", "violation"});
    std::uint64_t violations = 0;
    for (const auto& r : rows) {
      violations += !r.primitive;
      w.row({std::to_string(r.n), to_string(r.value), r.primitive ? to_string(*r.primitive) : "",
             flag(!r.primitive)});
    }
    w.summary({{"base", to_string(a)}, {"violations", violations}}, elapsed_ms(start), err);
    return violations == 0 ? kExitOk : kExitRejected;
  }
  if (kind == "dip") {
    if (args.q.empty()) throw UsageError("--q is required");
    const std::int64_t q = parse_i64("q", args.q);
    const Int a = parse_flag("base", args.base);
    const std::uint64_t p_max = need_u64("pmax", args.pmax);
    std::vector<DipRow> rows;
    try {
      rows = digit_dip_scan(q, a, p_max);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    RowWriter w(sink, csv, kind, {"p", "phi", "residue_digits", "phi_is_prime"});
    for (const auto& r : rows) {
      w.row({std::to_string(r.p), to_string(r.phi), std::to_string(r.residue_digits), flag(r.phi_is_prime)},
            {{"epsilon", r.epsilon}, {"residue", to_string(r.centered)}});
    }
    w.summary({{"q", std::to_string(q)}, {"base", to_string(a)}}, elapsed_ms(start), err);
    return kExitOk;
  }
  if (kind == "nonsquarefree") {
    const std::uint64_t limit = need_u64("limit", args.limit);
    std::vector<Int> bases;
    for (const auto& b : split_csv(args.bases)) bases.push_back(parse_flag("bases", b));
    std::vector<NonsquarefreeHit> hits;
    try {
      hits = nonsquarefree_scan(limit, bases, threads);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    RowWriter w(sink, csv, kind, {"Q", "bases", "factorization", "prime_square"});
    std::uint64_t non_prime_square = 0;
    for (const auto& h : hits) {
      non_prime_square += !h.prime_square;
      std::string fact;
      for (const auto& [p, e] : h.factorization) {
        if (!fact.empty()) fact += '*';
        fact += to_string(p);
        if (e > 1) fact += "^" + std::to_string(e);
      }
      w.row({to_string(h.q), join(h.bases, ';'), fact, flag(h.prime_square)});
    }
    w.summary({{"limit", std::to_string(limit)}, {"non_prime_square_hits", non_prime_square}}, elapsed_ms(start),
              err);
    return kExitOk;
  }
  throw UsageError("unknown search '" + kind + "'");
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::string qrange, pmax, arange, qmax, limit, cap, weak_limit, oeis;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  VerifyRanges r;
  if (!args.qrange.empty()) std::tie(r.q_lo, r.q_hi) = parse_range("qrange", args.qrange);
  if (!args.pmax.empty()) r.p_max = parse_u64("pmax", args.pmax);
  if (!args.arange.empty()) {
    std::tie(r.a_lo, r.a_hi) = parse_range("arange", args.arange);
    std::tie(r.modsquare_a_lo, r.modsquare_a_hi) = std::tie(r.a_lo, r.a_hi);
  }
  if (!args.qmax.empty()) r.modsquare_qmax = parse_u64("qmax", args.qmax);
  if (!args.limit.empty()) r.proth_limit = parse_u64("limit", args.limit);
  if (!args.cap.empty()) r.proth_cap = static_cast<unsigned>(parse_u64("cap", args.cap));
  if (!args.weak_limit.empty()) r.weak_limit = parse_u64("weak-limit", args.weak_limit);
  r.oeis_file = args.oeis;

  static const std::vector<std::string> kSuites = {"theorem1", "modsquare", "proth-oracle", "profiles",
                                                   "weak-universal"};
  std::vector<std::string> suites;
  if (args.suite == "all") {
    suites = kSuites;
  } else if (std::find(kSuites.begin(), kSuites.end(), args.suite) != kSuites.end()) {
    suites = {args.suite};
  } else {
    throw UsageError("unknown suite '" + args.suite + "'");
  }

  std::uint64_t total = 0;
  for (const auto& name : suites) {
    const auto start = Clock::now();
    SuiteReport rep;
    if (name == "theorem1") rep = verify_theorem1(r);
    if (name == "modsquare") rep = verify_modsquare(r);
    if (name == "proth-oracle") rep = verify_proth_oracle(r);
    if (name == "profiles") rep = verify_profiles();
    if (name == "weak-universal") rep = verify_weak_universal(r);
    for (const auto& v : rep.violations) {
      Record rec = header("verify");
      rec["suite"] = name;
      rec["kind"] = "violation";
      rec["violation"] = v;
      emit(out, rec);
    }
    Record summary = header("verify");
    summary["suite"] = name;
    summary["kind"] = "summary";
    summary["checked"] = rep.checked;
    summary["skipped"] = rep.skipped;
    summary["violations"] = rep.violations.size();
    summary["verdict"] = rep.violations.empty() ? "verified" : "violations";
    if (!rep.details.empty()) summary["details"] = rep.details;
    summary["elapsed_ms"] = elapsed_ms(start);
    emit(out, summary);
    total += rep.violations.size();
  }
  return total == 0 ? kExitOk : kExitRejected;
}

void error_record(std::ostream& out, const std::string& command, const std::string& message) {
  Record r = header(command.empty() ? "chebprime" : command);
  r["verdict"] = "error";
  r["error"] = message;
  emit(out, r);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev-polynomial Lucas-Lehmer style primality tests", "chebprime"};
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "Chebyshev test of an odd integer Q");
  test->add_option("Q", test_args.q, "odd integer to test")->required();
  test->add_option("--base,--a", test_args.base, "base a");
  test->add_flag("--strong", test_args.strong, "strong test with profile");
  test->add_flag("--weak", test_args.weak, "weak test T_Q(a) == a");
  test->add_flag("--mod-square", test_args.mod_square, "T congruence modulo Q^2");

  FamilyArgs fam_args;
  auto* fam = app.add_subcommand("family", "certify a member of a special family");
  fam->require_subcommand(1);
  for (const char* name : {"mersenne", "wagstaff", "genmersenne", "genwagstaff", "three-pow", "cubic", "riesel",
                           "twelveq", "proth", "fermat"}) {
    auto* sub = fam->add_subcommand(name);
    sub->add_option("--p", fam_args.p);
    sub->add_option("--q", fam_args.q);
    sub->add_option("--n", fam_args.n);
    sub->add_option("--k", fam_args.k);
    sub->add_option("--r", fam_args.r);
    sub->add_option("--sign", fam_args.sign);
    sub->add_option("--base,--a", fam_args.base);
    sub->add_option("--cap", fam_args.cap, "proth base search cap");
    sub->add_flag("--sufficiency", fam_args.sufficiency);
  }

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "batch scans");
  search->require_subcommand(1);
  for (const char* name :
       {"pseudoprimes", "sierpinski-cover", "sierpinski-scan", "primitive-divisors", "dip", "nonsquarefree"}) {
    auto* sub = search->add_subcommand(name);
    sub->add_option("--base,--a", search_args.base);
    sub->add_option("--bases", search_args.bases, "comma-separated bases");
    sub->add_option("--limit", search_args.limit);
    sub->add_flag("--strong", search_args.strong);
    sub->add_option("--k", search_args.k);
    sub->add_option("--cover", search_args.cover, "comma-separated primes");
    sub->add_option("--period", search_args.period);
    sub->add_option("--q", search_args.q);
    sub->add_option("--pmax", search_args.pmax);
    sub->add_option("--nmin", search_args.nmin);
    sub->add_option("--nmax", search_args.nmax);
    sub->add_option("--format", search_args.format);
    sub->add_option("--out", search_args.out);
  }

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", verify_args.suite);
  verify->add_option("--qrange", verify_args.qrange);
  verify->add_option("--pmax", verify_args.pmax);
  verify->add_option("--arange", verify_args.arange);
  verify->add_option("--qmax", verify_args.qmax);
  verify->add_option("--limit", verify_args.limit);
  verify->add_option("--cap", verify_args.cap);
  verify->add_option("--weak-limit", verify_args.weak_limit);
  verify->add_option("--oeis-a175530", verify_args.oeis, "known weak-universal composites, one per line");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  std::string command;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    if (!args.empty()) command = args.front();
    error_record(out, command, e.what());
    return kExitUsage;
  }

  try {
    if (test->parsed()) {
      command = "test";
      return cmd_test(test_args, out);
    }
    if (fam->parsed()) {
      command = "family";
      return cmd_family(fam->get_subcommands().front()->get_name(), fam_args, out);
    }
    if (search->parsed()) {
      command = "search";
      return cmd_search(search->get_subcommands().front()->get_name(), search_args, out, err);
    }
    command = "verify";
    return cmd_verify(verify_args, out);
  } catch (const std::invalid_argument& e) {
    // UsageError, PreconditionError and library argument checks.
    err << e.what() << '\n';
    error_record(out, command, e.what());
    return kExitUsage;
  }
}

}  // namespace chebprime::cli
