#pragma once

// Verification suites over built-in fixtures.  Each criterion reports the
// measured deviations, the pinned tolerances, and its runtime; the CLI
// `verify` subcommand and the acceptance binary both run through here.

#include <cstdint>
#include <string>
#include <vector>

#include "oddzeta/symbolcalc.hpp"
#include "oddzeta/zetacontinuation.hpp"

namespace oddzeta::verify {

struct CheckRow {
  std::string fixture;
  std::string quantity;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckRow> rows;
  double runtime_seconds = 0.0;
  double runtime_limit = 0.0;

  bool passed() const {
    if (runtime_limit > 0 && runtime_seconds >= runtime_limit) return false;
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  double max_measured() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.measured);
    return m;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 0;  // 0: use default_seed()
  bool doubled = false;    // additionally re-run with doubled K, N_tail, J, N
  zeta::ZetaConfig zcfg;
  symb::SymbolConfig scfg;
};

SuiteResult criterion_branch(const VerifyOptions& o);             // 1
SuiteResult criterion_det_oracle(const VerifyOptions& o);         // 2
SuiteResult criterion_zeta_at_zero(const VerifyOptions& o);       // 3
SuiteResult criterion_det_square(const VerifyOptions& o);         // 4
SuiteResult criterion_sign_law(const VerifyOptions& o);           // 5
SuiteResult criterion_trace_q_independence(const VerifyOptions& o);  // 6
SuiteResult criterion_tracial(const VerifyOptions& o);            // 7
SuiteResult criterion_symbol_lemmas(const VerifyOptions& o);      // 8
SuiteResult criterion_anomaly_mult(const VerifyOptions& o);       // 9
SuiteResult criterion_angle_dependence(const VerifyOptions& o);   // 10

// All ten, in order.
std::vector<SuiteResult> run_all(const VerifyOptions& o);

// Named suite as exposed by the CLI: trace, det, sign, mult, symbols, all.
std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& o);

}  // namespace oddzeta::verify
