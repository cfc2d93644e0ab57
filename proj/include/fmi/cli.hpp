#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fmi/hamburger_fmi.hpp"
#include "fmi/np_fmi.hpp"
#include "fmi/realization.hpp"

namespace fmi {

enum class ProblemKind { kNp, kHamburger };
enum class ReportFormat { kJson, kText };

struct RunConfig {
  double tol = 1e-9;
  int grid_size = 100;
  std::uint64_t seed = 0;
  ReportFormat report_format = ReportFormat::kJson;
  std::vector<double> y_ladder{1e3, 1e4, 1e5, 1e6};
};

/// Throws std::invalid_argument unless tol > 0, grid_size >= 1 and the
/// ladder is nonempty and positive.
void ValidateConfig(const RunConfig& config);

/// Full check suite of a disk problem against a solving function, sorted by
/// check name.
std::vector<CheckReport> CheckNp(const NpData& data, const DiskHerglotz& w,
                                 const RunConfig& config);
/// Full check suite of a moment problem against a line measure, sorted by
/// check name.
std::vector<CheckReport> CheckHamburger(const MomentData& data, const LineMeasure& sigma,
                                        const RunConfig& config);

/// Worst residual per catalog identity over `trials` random instances and
/// ten random points each. `break_fi` shifts A(0,0) by 1 in every instance.
std::vector<CheckReport> IdentityReports(ProblemKind kind, int trials, const RunConfig& config,
                                         bool break_fi);

/// Entry point of the `fmi` command. Exit codes: 0 all checks pass, 1 a
/// check failed, 2 input or usage error.
int RunCli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
           std::ostream& err);

}  // namespace fmi
