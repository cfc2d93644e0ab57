#include "fmi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "fmi/instances.hpp"
#include "fmi/json_io.hpp"

namespace fmi {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double RowSumScale(const CMatrix& h) {
  return std::max(1.0, h.cwiseAbs().rowwise().sum().maxCoeff());
}

// Tracks the most negative scaled eigenvalue over a sweep of points.
class PsdSweep {
 public:
  PsdSweep(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

  void Add(const CMatrix& h, Complex z) {
    const double eig = MinEigenvalue(h);
    const double scaled = eig / RowSumScale(h);
    ++points_;
    if (scaled < worst_scaled_) {
      worst_scaled_ = scaled;
      eig_ = eig;
      witness_ = z;
    }
  }

  void AddResidual(double residual, Complex z) {
    if (residual > residual_) {
      residual_ = residual;
      residual_witness_ = z;
    }
    has_residual_ = true;
  }

  CheckReport Report() const {
    CheckReport out;
    out.check_name = name_;
    out.min_eigenvalue = eig_;
    out.witness_point = witness_;
    bool ok = worst_scaled_ >= -tol_;
    out.details = {{"points", points_}, {"scaled_min_eigenvalue", worst_scaled_}};
    if (has_residual_) {
      out.residual = residual_;
      out.details["residual_witness"] = ComplexToJson(residual_witness_);
      if (residual_ > 1e-9) {
        ok = false;
        if (!(worst_scaled_ < -tol_)) out.witness_point = residual_witness_;
      }
    }
    out.verdict = ok && points_ > 0;
    return out;
  }

 private:
  std::string name_;
  double tol_;
  int points_ = 0;
  double worst_scaled_ = std::numeric_limits<double>::infinity();
  double eig_ = 0.0;
  Complex witness_;
  bool has_residual_ = false;
  double residual_ = 0.0;
  Complex residual_witness_;
};

// Tracks the worst residual of one identity.
struct ResidualSweep {
  ResidualSweep(std::string name_in, double tol_in = 1e-9)
      : name(std::move(name_in)), tol(tol_in) {}

  std::string name;
  double tol;
  double worst = 0.0;
  Complex witness;
  int evaluations = 0;

  void Add(double residual, Complex z) {
    ++evaluations;
    if (!(residual <= worst)) {
      worst = residual;
      witness = z;
    }
  }

  CheckReport Report() const {
    CheckReport out;
    out.check_name = name;
    out.residual = worst;
    out.witness_point = witness;
    out.verdict = std::isfinite(worst) && worst <= tol;
    out.details = {{"evaluations", evaluations}, {"tolerance", tol}};
    return out;
  }
};

CheckReport FundamentalIdentityReport(const std::string& name, const Realization& r) {
  CheckReport out;
  out.check_name = name;
  const double residual = FundamentalIdentityResidual(r);
  const double bound = 1e-10 * FundamentalIdentityScale(r);
  out.residual = residual;
  out.verdict = residual <= bound;
  out.details = {{"bound", bound}};
  return out;
}

CheckReport MatrixPsdReport(const std::string& name, const CMatrix& h, double tol) {
  const PsdReport psd = CheckPsd(h, tol * RowSumScale(h));
  CheckReport out;
  out.check_name = name;
  out.verdict = psd.verdict;
  out.min_eigenvalue = psd.min_eigenvalue;
  out.details = {{"tolerance", psd.tolerance}, {"hermitian_defect", psd.hermitian_defect}};
  return out;
}

void SortReports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CheckReport& a, const CheckReport& b) {
                     return a.check_name < b.check_name;
                   });
}

bool AllPass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.verdict; });
}

std::string FormatComplex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(6) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
     << "i";
  return os.str();
}

void WriteReports(const std::vector<CheckReport>& reports, ReportFormat format,
                  std::ostream& out) {
  if (format == ReportFormat::kJson) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(ReportToJson(r));
    out << arr.dump(2) << "\n";
    return;
  }
  for (const auto& r : reports) {
    out << (r.verdict ? "PASS " : "FAIL ") << r.check_name;
    out << std::setprecision(6);
    if (r.min_eigenvalue) out << " min_eig=" << *r.min_eigenvalue;
    if (r.residual) out << " residual=" << *r.residual;
    if (r.witness_point) out << " at=" << FormatComplex(*r.witness_point);
    out << "\n";
  }
}

json ReadJson(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return json::parse(in);
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open " + path);
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw UsageError("invalid JSON in " + path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const json& j) {
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << j.dump(2) << "\n";
}

struct Inputs {
  AnyProblem problem;
  AnyMeasure measure;
};

Inputs LoadInputs(const std::string& problem_path, const std::string& measure_path,
                  std::istream& in) {
  const json problem_json = ReadJson(problem_path, in);
  json measure_json;
  json problem_part = problem_json;
  if (measure_path.empty()) {
    if (!problem_json.is_object() || !problem_json.contains("measure") ||
        !problem_json.contains("problem") || !problem_json.at("problem").is_object()) {
      throw UsageError("a measure file is required unless the input is a gen bundle");
    }
    problem_part = problem_json.at("problem");
    measure_json = problem_json.at("measure");
  } else {
    if (problem_path == "-" && measure_path == "-") {
      throw UsageError("only one input may be read from stdin");
    }
    measure_json = ReadJson(measure_path, in);
  }
  Inputs inputs{ProblemFromJson(problem_part), MeasureFromJson(measure_json)};
  const bool np = std::holds_alternative<NpData>(inputs.problem);
  const bool circle = std::holds_alternative<DiskHerglotz>(inputs.measure);
  if (np != circle) {
    throw UsageError(np ? "np problems need a circle measure"
                        : "hamburger problems need a line measure");
  }
  return inputs;
}

std::uint64_t SeedFromEnvironment() {
  if (const char* env = std::getenv("FMI_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t seed = std::stoull(env, &used);
      if (used == std::string(env).size()) return seed;
    } catch (const std::exception&) {
    }
    throw UsageError("FMI_SEED must be an unsigned integer");
  }
  return 0;
}

}  // namespace

void ValidateConfig(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("RunConfig: tol must be positive");
  if (config.grid_size < 1) throw std::invalid_argument("RunConfig: grid size must be >= 1");
  if (config.y_ladder.empty() ||
      std::any_of(config.y_ladder.begin(), config.y_ladder.end(),
                  [](double y) { return !(y > 0.0); })) {
    throw std::invalid_argument("RunConfig: y ladder must be nonempty and positive");
  }
}

std::vector<CheckReport> CheckNp(const NpData& data, const DiskHerglotz& w,
                                 const RunConfig& config) {
  ValidateConfig(config);
  const Realization r = NpRealization(data);
  const Evaluator eval = MakeEvaluator(w);
  Rng rng(config.seed);
  const std::vector<Complex> grid = NpGrid(rng, data, config.grid_size);

  std::vector<CheckReport> reports;
  reports.push_back(FundamentalIdentityReport("np.fundamental_identity", r));
  reports.push_back(MatrixPsdReport("np.pick_matrix_psd", r.A, config.tol));

  CheckReport interp;
  interp.check_name = "np.interpolation";
  double worst = 0.0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const double err = std::abs(eval(data.nodes[k]) - data.values[k]);
    if (!(err <= worst)) {
      worst = err;
      interp.witness_point = data.nodes[k];
    }
  }
  interp.residual = worst;
  interp.verdict = worst <= 1e-10;
  reports.push_back(interp);

  PsdSweep fmi_sweep("np.fmi_psd", config.tol);
  PsdSweep tfmi1("np.tfmi_I_psd", config.tol);
  PsdSweep tfmi2("np.tfmi_II_psd", config.tol);
  PsdSweep reflected("np.fmi_reflected_psd", config.tol);
  for (Complex z : grid) {
    fmi_sweep.Add(NpFmi(eval, r, z).matrix, z);
    const TfmiResult t1 = NpTfmi(TfmiKind::kI, eval, r, z);
    tfmi1.Add(t1.direct, z);
    tfmi1.AddResidual(t1.residual, z);
    const TfmiResult t2 = NpTfmi(TfmiKind::kII, eval, r, z);
    tfmi2.Add(t2.direct, z);
    tfmi2.AddResidual(t2.residual, z);
    const auto forms = NpSymmetricPoint(eval, r, z);
    reflected.Add(forms.expected, z);
    reflected.AddResidual(ScaledResidual(forms.transformed, forms.expected), z);
  }
  reports.push_back(fmi_sweep.Report());
  reports.push_back(tfmi1.Report());
  reports.push_back(tfmi2.Report());
  reports.push_back(reflected.Report());

  const Complex t = std::polar(1.0, 0.7);
  const std::size_t probes = std::min<std::size_t>(grid.size(), 10);
  for (NpIdentity id : AllNpIdentities()) {
    ResidualSweep sweep{"np.identity." + std::string(Name(id))};
    for (std::size_t i = 0; i < probes; ++i) {
      sweep.Add(NpIdentityResidual(id, eval, r, grid[i], t), grid[i]);
    }
    reports.push_back(sweep.Report());
  }

  const bool zero_is_node = std::any_of(data.nodes.begin(), data.nodes.end(),
                                        [](Complex zk) { return std::abs(zk) <= 1e-9; });
  if (!zero_is_node) {
    CheckReport anchor;
    anchor.check_name = "np.w_at_zero";
    anchor.residual = ScaledResidual(NpW(eval, r, 0.0), r.A / 2.0);
    anchor.witness_point = Complex(0.0);
    anchor.verdict = *anchor.residual <= 1e-10;
    reports.push_back(anchor);
  }

  reports.push_back(ToCheckReport(NpSchwarzPickEquivalence(eval, r, grid, config.tol)));
  SortReports(reports);
  return reports;
}

std::vector<CheckReport> CheckHamburger(const MomentData& data, const LineMeasure& sigma,
                                        const RunConfig& config) {
  ValidateConfig(config);
  const Realization r = HRealization(data);
  const Evaluator eval = MakeEvaluator(HalfPlaneNevanlinna{sigma});
  Rng rng(config.seed);
  const std::vector<Complex> grid = HamburgerGrid(rng, config.grid_size);

  std::vector<CheckReport> reports;
  reports.push_back(FundamentalIdentityReport("hamburger.fundamental_identity", r));
  reports.push_back(MatrixPsdReport("hamburger.hankel_psd", r.A, config.tol));

  PsdSweep fmi_sweep("hamburger.fmi_psd", config.tol);
  PsdSweep tfmi1("hamburger.tfmi_I_psd", config.tol);
  PsdSweep tfmi2("hamburger.tfmi_II_psd", config.tol);
  PsdSweep trunc("hamburger.tfmi_truncated_psd", config.tol);
  PsdSweep conj("hamburger.fmi_conjugate_psd", config.tol);
  for (Complex z : grid) {
    fmi_sweep.Add(HFmi(eval, r, z).matrix, z);
    const TfmiResult t1 = HTfmi(TfmiKind::kI, eval, r, z);
    tfmi1.Add(t1.direct, z);
    tfmi1.AddResidual(t1.residual, z);
    const TfmiResult t2 = HTfmi(TfmiKind::kII, eval, r, z);
    tfmi2.Add(t2.direct, z);
    tfmi2.AddResidual(t2.residual, z);
    const TfmiResult tt = HTfmi(TfmiKind::kTruncated, eval, r, z);
    trunc.Add(tt.direct, z);
    trunc.AddResidual(tt.residual, z);
    conj.Add(HFmi(eval, r, std::conj(z)).matrix, std::conj(z));
  }
  reports.push_back(fmi_sweep.Report());
  reports.push_back(tfmi1.Report());
  reports.push_back(tfmi2.Report());
  reports.push_back(trunc.Report());
  reports.push_back(conj.Report());

  std::uniform_real_distribution<double> lambda_dist(-5.0, 5.0);
  const std::size_t probes = std::min<std::size_t>(grid.size(), 10);
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < probes; ++i) lambdas.push_back(lambda_dist(rng));
  for (HIdentity id : AllHIdentities()) {
    ResidualSweep sweep{"hamburger.identity." + std::string(Name(id))};
    for (std::size_t i = 0; i < probes; ++i) {
      sweep.Add(HIdentityResidual(id, eval, r, grid[i], lambdas[i]), grid[i]);
    }
    reports.push_back(sweep.Report());
  }

  const ExtractionReport extraction = ExtractMoments(sigma, data, config.tol, config.y_ladder);
  CheckReport ex;
  ex.check_name = "hamburger.extraction";
  ex.verdict = extraction.all_verdicts();
  ex.min_eigenvalue = extraction.gap_min_eigenvalue;
  ex.residual = std::max(extraction.annihilation_residual, extraction.rank_one_residual);
  ex.witness_point = Complex(0.0, config.y_ladder.back());
  const json full = ReportToJson(extraction);
  ex.details = {{"verdicts", full.at("verdicts")},
                {"rho", extraction.rho},
                {"asymptotic_s2n", extraction.asymptotic_s2n},
                {"ladder_converged", extraction.ladder_converged}};
  reports.push_back(ex);

  SortReports(reports);
  return reports;
}

std::vector<CheckReport> IdentityReports(ProblemKind kind, int trials, const RunConfig& config,
                                         bool break_fi) {
  ValidateConfig(config);
  if (trials < 1) throw std::invalid_argument("IdentityReports: trials must be >= 1");
  Rng rng(config.seed);
  std::vector<CheckReport> reports;
  constexpr int kPointsPerTrial = 10;
  const double delta = break_fi ? 1.0 : 0.0;

  if (kind == ProblemKind::kNp) {
    std::vector<ResidualSweep> sweeps;
    for (NpIdentity id : AllNpIdentities()) {
      sweeps.push_back({"np.identity." + std::string(Name(id)), config.tol});
    }
    ResidualSweep fi{"np.fundamental_identity", config.tol};
    std::uniform_int_distribution<int> n_dist(1, 8);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < trials; ++trial) {
      const NpInstance inst = RandomNpInstance(rng, n_dist(rng));
      const Realization r = PerturbPickMatrix(NpRealization(inst.data), delta);
      const Evaluator eval = MakeEvaluator(inst.solution);
      fi.Add(FundamentalIdentityResidual(r) / FundamentalIdentityScale(r), Complex(0.0));
      const std::vector<Complex> grid = NpGrid(rng, inst.data, kPointsPerTrial);
      for (int i = 0; i < kPointsPerTrial; ++i) {
        const Complex t = std::polar(1.0, angle(rng));
        for (std::size_t k = 0; k < sweeps.size(); ++k) {
          sweeps[k].Add(NpIdentityResidual(AllNpIdentities()[k], eval, r, grid[i], t), grid[i]);
        }
      }
    }
    reports.push_back(fi.Report());
    for (const auto& s : sweeps) reports.push_back(s.Report());
  } else {
    std::vector<ResidualSweep> sweeps;
    for (HIdentity id : AllHIdentities()) {
      sweeps.push_back({"hamburger.identity." + std::string(Name(id)), config.tol});
    }
    ResidualSweep fi{"hamburger.fundamental_identity", config.tol};
    std::uniform_int_distribution<int> n_dist(1, 6);
    std::uniform_real_distribution<double> lambda_dist(-5.0, 5.0);
    for (int trial = 0; trial < trials; ++trial) {
      const HamburgerInstance inst = RandomHamburgerInstance(rng, n_dist(rng));
      const Realization r = PerturbPickMatrix(HRealization(inst.data), delta);
      const Evaluator eval = MakeEvaluator(HalfPlaneNevanlinna{inst.measure});
      fi.Add(FundamentalIdentityResidual(r) / FundamentalIdentityScale(r), Complex(0.0));
      const std::vector<Complex> grid = HamburgerGrid(rng, kPointsPerTrial);
      for (int i = 0; i < kPointsPerTrial; ++i) {
        const double lambda = lambda_dist(rng);
        for (std::size_t k = 0; k < sweeps.size(); ++k) {
          sweeps[k].Add(HIdentityResidual(AllHIdentities()[k], eval, r, grid[i], lambda),
                        grid[i]);
        }
      }
    }
    reports.push_back(fi.Report());
    for (const auto& s : sweeps) reports.push_back(s.Report());
  }
  for (auto& r : reports) r.details["trials"] = trials;
  SortReports(reports);
  return reports;
}

int RunCli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Fundamental matrix inequality checks for interpolation and moment problems"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  std::string problem_kind;
  int n = 3;
  double surplus = 0.0;
  std::string problem_out;
  std::string measure_out;
  std::string problem_path;
  std::string measure_path;
  int trials = 50;
  bool break_fi = false;
  std::optional<std::uint64_t> seed;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (falls back to FMI_SEED, then 0)");
    cmd->add_option("--tol", config.tol, "Eigenvalue and residual tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid", config.grid_size, "Number of evaluation points")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--report", format, "Report format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate a solvable problem with its measure");
  gen->add_option("--problem", problem_kind, "np or hamburger")
      ->required()
      ->check(CLI::IsMember({"np", "hamburger"}));
  gen->add_option("--n", n, "Problem size")->check(CLI::PositiveNumber);
  gen->add_option("--surplus", surplus, "Amount added to the top moment")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--problem-out", problem_out, "Write the problem to this file");
  gen->add_option("--measure-out", measure_out, "Write the measure to this file");
  gen->add_option("--seed", seed, "RNG seed (falls back to FMI_SEED, then 0)");

  CLI::App* check = app.add_subcommand("check", "Run the full check suite");
  check->add_option("problem", problem_path, "Problem JSON, bundle, or - for stdin")->required();
  check->add_option("measure", measure_path, "Measure JSON");
  add_common(check);

  CLI::App* identities = app.add_subcommand("identities", "Verify the identity catalog");
  identities->add_option("--problem", problem_kind, "np or hamburger")
      ->required()
      ->check(CLI::IsMember({"np", "hamburger"}));
  identities->add_option("--trials", trials, "Random instances")->check(CLI::PositiveNumber);
  identities->add_flag("--break-fi", break_fi, "Perturb the Pick matrix (negative control)");
  add_common(identities);

  CLI::App* extract = app.add_subcommand("extract", "Moment extraction report");
  extract->add_option("problem", problem_path, "Problem JSON, bundle, or - for stdin")
      ->required();
  extract->add_option("measure", measure_path, "Measure JSON");
  add_common(extract);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    config.seed = seed ? *seed : SeedFromEnvironment();
    config.report_format = format == "text" ? ReportFormat::kText : ReportFormat::kJson;

    if (*gen) {
      Rng rng(config.seed);
      json problem;
      json measure;
      if (problem_kind == "np") {
        const NpInstance inst = RandomNpInstance(rng, n);
        problem = ProblemToJson(inst.data);
        measure = MeasureToJson(inst.solution);
      } else {
        const HamburgerInstance inst = RandomHamburgerInstance(rng, n, 5.0, surplus);
        problem = ProblemToJson(inst.data);
        measure = MeasureToJson(inst.measure);
      }
      if (!problem_out.empty()) WriteJsonFile(problem_out, problem);
      if (!measure_out.empty()) WriteJsonFile(measure_out, measure);
      if (problem_out.empty() && measure_out.empty()) {
        out << json{{"problem", problem}, {"measure", measure}}.dump(2) << "\n";
      } else if (problem_out.empty()) {
        out << problem.dump(2) << "\n";
      } else if (measure_out.empty()) {
        out << measure.dump(2) << "\n";
      }
      return 0;
    }

    if (*identities) {
      const auto reports = IdentityReports(
          problem_kind == "np" ? ProblemKind::kNp : ProblemKind::kHamburger, trials, config,
          break_fi);
      WriteReports(reports, config.report_format, out);
      return AllPass(reports) ? 0 : 1;
    }

    const Inputs inputs = LoadInputs(problem_path, measure_path, in);

    if (*extract) {
      const auto* data = std::get_if<MomentData>(&inputs.problem);
      if (data == nullptr) throw UsageError("extract needs a hamburger problem");
      const ExtractionReport report =
          ExtractMoments(std::get<LineMeasure>(inputs.measure), *data, config.tol,
                         config.y_ladder);
      if (config.report_format == ReportFormat::kJson) {
        out << ReportToJson(report).dump(2) << "\n";
      } else {
        out << std::setprecision(10) << "rho " << report.rho << "\n"
            << "asymptotic_s2n " << report.asymptotic_s2n << "\n"
            << "ladder_converged " << (report.ladder_converged ? "yes" : "no") << "\n";
        const json verdicts = ReportToJson(report).at("verdicts");
        for (const auto& [name, v] : verdicts.items()) {
          out << (v.get<bool>() ? "PASS " : "FAIL ") << name << "\n";
        }
      }
      return report.all_verdicts() ? 0 : 1;
    }

    std::vector<CheckReport> reports;
    if (const auto* np = std::get_if<NpData>(&inputs.problem)) {
      reports = CheckNp(*np, std::get<DiskHerglotz>(inputs.measure), config);
    } else {
      reports = CheckHamburger(std::get<MomentData>(inputs.problem),
                               std::get<LineMeasure>(inputs.measure), config);
    }
    WriteReports(reports, config.report_format, out);
    return AllPass(reports) ? 0 : 1;
  } catch (const std::exception& e) {
    err << "fmi: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fmi
