#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mzv/identities.hpp"

namespace mzv {

/// Report as an ordered JSON object. Values are written at report.digits
/// significant digits; wall_time only when `timings` is set.
nlohmann::ordered_json report_to_json(const IdentityReport& report, bool timings);
/// Inverse of report_to_json, parsing numbers at ctx precision.
IdentityReport report_from_json(const nlohmann::ordered_json& j, const PrecisionContext& ctx);

std::string csv_header();
std::string report_to_csv(const IdentityReport& report, bool timings);

/// "n=1;m=2;alpha=1;beta=0.5"
std::string params_to_string(const IdentityParams& p, int digits);

/// One-line human summary.
std::string report_summary(const IdentityReport& report);

// ---------------------------------------------------------------------------

enum class ReportFormat { jsonl, csv };

/// One block of the grid: every listed value combination of one identity.
struct CheckGrid {
  IdentityId id = IdentityId::prop1;
  std::vector<int> n;
  std::vector<int> m;
  std::vector<int> k;
  std::vector<Complex> alpha;
  std::vector<Complex> beta;
  std::vector<Complex> x;
  std::vector<int> level;
};

struct ScanConfig {
  int digits = 40;
  double tol = 1e-10;
  int jobs = 0;  // 0: OpenMP default
  bool timings = false;
  std::string output;  // empty: standard output
  ReportFormat format = ReportFormat::jsonl;
  TruncationPlan plan;
  std::vector<CheckGrid> checks;
};

/// Throws DomainError naming the offending field, e.g. "checks[0].alpha[1]".
ScanConfig parse_scan_config(const nlohmann::json& j, int default_digits);
ScanConfig load_scan_config(const std::string& path, int default_digits);

/// A single grid point.
struct CheckPoint {
  IdentityId id;
  IdentityParams params;
};

/// Grid points in block order, each block expanded lexicographically over
/// (n, m, k, alpha, beta, x, level); (k, n) pairs outside 0 < n < k are skipped.
std::vector<CheckPoint> expand_grid(const ScanConfig& config);

/// Runs one grid point; domain failures become failed reports.
IdentityReport run_point(const CheckPoint& point, const CheckOptions& opts);

struct ScanSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errored = 0;
};

/// Runs the grid (OpenMP over points unless exec is serial) and returns the
/// reports in grid order.
std::vector<IdentityReport> run_scan(const ScanConfig& config, Execution exec);

/// Writes the reports in the configured format and tallies them.
ScanSummary write_reports(const std::vector<IdentityReport>& reports, const ScanConfig& config, std::ostream& out);

}  // namespace mzv
