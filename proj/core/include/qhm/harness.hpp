#pragma once

#include <optional>

#include "qhm/ktheory.hpp"
#include "qhm/modules.hpp"

namespace qhm {

// Configuration of a verification run: algebra parameters, suite selection,
// seed and sweep resolutions.
struct SuiteConfig {
  int c = 2;
  double mu = 0.3;
  double nu = 0.2;
  int nx = 128;
  int ny = 64;
  int p_max = 4;
  unsigned long long seed = 1;
  std::string suite = "all";  // all|algebra|cocycles|even|odd|dual|toeplitz
  std::vector<int> resolutions;

  ParamsPtr make() const;
  void validate() const;  // throws invalid_argument on bad suite / windows
};

// One verified quantity: a computed complex value against a closed-form
// reference with a provenance tag, or a skipped entry with a reason.
struct CheckRecord {
  std::string id;
  cplx computed = 0.0;
  cplx reference = 0.0;
  std::string provenance;  // paper-table | derived-oracle | trivial
  double abs_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string skip_reason;
  int nx = 0, ny = 0;
  bool quadrature_bound = false;  // participates in the refinement gate
};

struct SuiteSummary {
  int passed = 0, failed = 0, skipped = 0;
};
SuiteSummary summarize(const std::vector<CheckRecord>& recs);

// Runs the selected suites in dependency order; deterministic given the seed;
// records are sorted by id.
std::vector<CheckRecord> run_suite(const SuiteConfig& cfg);

// JSON report (stable field order, byte-identical across runs with the same
// config and seed).
std::string emit_json(const SuiteConfig& cfg, const std::vector<CheckRecord>& recs);

// Markdown rendition of the even and odd pairing tables plus the full check
// list.
std::string emit_tables(const std::vector<CheckRecord>& recs);

// Error-vs-resolution table for every check present at all resolutions.
struct SweepRow {
  std::string id;
  std::vector<double> errs;  // one per resolution
  bool quadrature_bound = false;
  bool converged = false;  // halves between the last two resolutions, or floor
};
std::vector<SweepRow> sweep(const SuiteConfig& cfg, const std::vector<int>& resolutions);

std::string emit_sweep(const std::vector<SweepRow>& rows, const std::vector<int>& resolutions);

}  // namespace qhm
