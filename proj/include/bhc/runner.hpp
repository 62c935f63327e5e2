#pragma once

// Batch runner: builds the objects a CaseConfig describes, evaluates its
// residual system over the grid and issues a verdict. Also hosts the built-in
// case catalog, suites, parameter sweeps and the CSV/JSON writers.

#include <memory>
#include <ostream>

#include "bhc/biharmonic.hpp"
#include "bhc/config.hpp"
#include "bhc/constructions.hpp"

namespace bhc {

struct AuditResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Verdict {
  std::string id;
  bool expect_pass = true;
  bool passed = false;
  Components max_abs;        // per component
  double tolerance = kNaN;
  double engine_gap = kNaN;  // max |jets - fd| over rows and components, engine = both only
  std::vector<AuditResult> audits;
  std::string note;

  /// Positive cases must pass, negative controls must fail.
  bool as_expected() const { return passed == expect_pass; }
};

struct CaseResult {
  CaseConfig config;
  ResidualReport report;  // jets report for engine = both
  Verdict verdict;
};

/// Objects built from a config; the ambient is shared with the immersion.
struct BuiltCase {
  std::shared_ptr<const AmbientSpace> ambient;
  std::unique_ptr<Immersion> immersion;
  ConformalFactorSpec factor;
  System system = System::conformal;
  GridSpec grid;
};

/// Throws ConfigError for inconsistent descriptors.
BuiltCase build_case(const CaseConfig& config);

double default_tolerance(const std::string& engine);

/// Deterministic for a fixed config. Configuration problems throw
/// ConfigError; a nonpositive conformal factor yields a failing verdict.
CaseResult run_case(const CaseConfig& config, unsigned threads = 1);

// ---------------------------------------------------------------------------

const std::vector<CaseConfig>& builtin_catalog();
/// Throws ConfigError for unknown ids.
const CaseConfig& builtin_case(const std::string& id);

/// Case ids from a manifest: one per line, '#' starts a comment.
std::vector<std::string> read_manifest(std::istream& in);

struct SuiteSummary {
  std::vector<Verdict> verdicts;
  bool ok() const;
};

/// Resolves every id before running anything; unknown ids throw ConfigError
/// listing all of them. `resolve` maps an id to its config.
SuiteSummary run_suite(const std::vector<std::string>& ids,
                       const std::function<CaseConfig(const std::string&)>& resolve, unsigned threads = 1);

struct SweepRow {
  double value = kNaN;
  Components max_abs;
  bool passed = false;
};

std::vector<SweepRow> sweep(const CaseConfig& config, const std::string& parameter, const std::vector<double>& values,
                            unsigned threads = 1);

// ---------------------------------------------------------------------------
// Writers. Floats use 17 significant digits.

std::string format_double(double v);
std::vector<std::string> csv_header(System system);
void write_csv(std::ostream& out, const CaseResult& result);
void write_json(std::ostream& out, const CaseResult& result);
void write_suite_table(std::ostream& out, const SuiteSummary& summary);
void write_sweep_csv(std::ostream& out, const std::string& parameter, const std::vector<SweepRow>& rows);

}  // namespace bhc
