#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rnkit/construction.hpp"
#include "rnkit/harness/scenario.hpp"
#include "rnkit/harness/serialize.hpp"
#include "rnkit/harness/suite.hpp"
#include "rnkit/theorems.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kNumerical = 3 };

void emit(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    rnkit::harness::write_file(path, content);
  }
}

int verify(const std::string& scenario_path, const std::string& theorem, std::optional<double> tol,
           std::optional<std::uint64_t> seed, const std::string& format, const std::string& report_path) {
  rnkit::harness::Scenario s = rnkit::harness::parse_scenario(scenario_path);
  if (!theorem.empty()) {
    rnkit::theorem_kind_from_string(theorem);
    s.suites = {theorem};
    s.tolerances.clear();
  }
  rnkit::harness::RunOptions options;
  options.tolerance = tol;
  options.seed = seed;
  const rnkit::Report r = rnkit::harness::run_suite(s, options);
  emit(format == "json" ? rnkit::harness::report_to_json(r) : rnkit::harness::report_to_text(r), report_path);
  return r.verdict == "pass" ? kPass : kFail;
}

int sweep(const std::string& case_name, const std::vector<int>& ns, const std::vector<double>& ls,
          const std::string& format, const std::string& report_path) {
  const rnkit::SweepTable t = rnkit::convergence_sweep(rnkit::testbed_case_from_string(case_name), ns, ls);
  emit(format == "json" ? rnkit::harness::sweep_to_json(t) : rnkit::harness::sweep_to_text(t), report_path);
  return kPass;
}

int smear(const std::string& scenario_path, const std::vector<int>& ns, const std::string& report_path) {
  const rnkit::harness::Scenario s = rnkit::harness::parse_scenario(scenario_path);
  const rnkit::harness::Materialized m = rnkit::harness::materialize(s, s.seed);
  if (!m.pair) throw rnkit::InvalidArgument(m.pair_error.empty() ? "smear needs a scenario with a pair" : m.pair_error);
  const std::vector<rnkit::SmearDiagnostic> table =
      m.testbed ? rnkit::smear_limit_diagnostics(*m.pair, ns, m.testbed->probe)
                : rnkit::smear_limit_diagnostics(*m.pair, ns);
  std::vector<rnkit::SmearingElement> elements;
  for (int n : ns) elements.push_back(rnkit::smear_element(*m.pair, n));
  std::ostringstream os;
  os << "     n   distance     hermite  legendre   error_estimate\n";
  for (size_t i = 0; i < table.size(); ++i) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%6d  %10.3e  %8d  %8d  %14.3e\n", table[i].n, table[i].distance,
                  elements[i].meta.hermite_nodes, elements[i].meta.legendre_nodes, elements[i].meta.error_estimate);
    os << buf;
  }
  os << "converges (5% monotone, final <= 0.05 initial): " << (rnkit::smear_table_converges(table) ? "yes" : "no")
     << "\n";
  emit(os.str(), report_path);
  return kPass;
}

int decompose(const std::string& path_file, const std::string& report_path) {
  const rnkit::CocyclePath u = rnkit::harness::path_from_json(rnkit::harness::read_file(path_file));
  emit(rnkit::harness::fit_to_json(rnkit::fit_generators(u)), report_path);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rnkit: numerical checks for generalized Radon-Nikodym weights"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RNKIT_VERSION));

  std::string scenario;
  std::string theorem;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string report;
  std::string format = "text";

  auto* v = app.add_subcommand("verify", "Run a scenario's suites and emit a report");
  v->add_option("--scenario", scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  v->add_option("--theorem", theorem, "Run only this theorem verifier")->check(CLI::IsMember({"rn1", "rn2", "rn3"}));
  v->add_option("--tol", tol, "Override every tolerance")->check(CLI::PositiveNumber);
  v->add_option("--seed", seed, "Override the scenario seed");
  v->add_option("--report", report, "Output file (default stdout)");
  v->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string case_name = "scalar";
  std::vector<int> ns{128, 256};
  std::vector<double> ls{8.0, 16.0};
  auto* sw = app.add_subcommand("sweep", "Weyl testbed convergence table");
  sw->add_option("--case", case_name, "scalar, factor or central")
      ->check(CLI::IsMember({"scalar", "factor", "central"}));
  sw->add_option("--N", ns, "Grid sizes (powers of two)");
  sw->add_option("--L", ls, "Box lengths");
  sw->add_option("--report", report, "Output file (default stdout)");
  sw->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::vector<int> smear_n{1, 2, 4, 8};
  auto* sm = app.add_subcommand("smear", "Smearing-element diagnostics for a scenario's pair");
  sm->add_option("--scenario", scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  sm->add_option("--n", smear_n, "Smearing orders");
  sm->add_option("--report", report, "Output file (default stdout)");

  std::string path_file;
  auto* dc = app.add_subcommand("decompose", "Fit generators (D, L) to a cocycle path file");
  dc->add_option("--path", path_file, "Path JSON file")->required()->check(CLI::ExistingFile);
  dc->add_option("--report", report, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*v) return verify(scenario, theorem, tol, seed, format, report);
    if (*sw) return sweep(case_name, ns, ls, format, report);
    if (*sm) return smear(scenario, smear_n, report);
    if (*dc) return decompose(path_file, report);
  } catch (const rnkit::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const rnkit::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const rnkit::ModeViolation& e) {
    std::cerr << "mode violation: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
