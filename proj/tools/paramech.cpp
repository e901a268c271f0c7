#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "paramech/paramech.hpp"

namespace {

namespace fs = std::filesystem;
using paramech::ExitCode;

struct Outcome {
  int code = 0;
  std::string message;
  std::vector<std::string> warnings;
};

unsigned thread_cap(std::size_t jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PARAMECH_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) cap = unsigned(v);
    } catch (const std::exception&) {
      std::cerr << "paramech: ignoring invalid PARAMECH_THREADS='" << env << "'\n";
    }
  }
  return unsigned(std::min<std::size_t>(cap, std::max<std::size_t>(jobs, 1)));
}

Outcome run_one(const fs::path& file, const fs::path& out_dir) {
  Outcome o;
  const std::string name = file.stem().string();
  try {
    const paramech::Scenario s = paramech::load_scenario(file);
    const paramech::RunReport r = paramech::run_scenario(s, name, out_dir);
    o.message = name + ": ok, trajectory " + r.trajectory_path.string() + ", summary " + r.summary_path.string() +
                ", energy drift " + paramech::format_double(r.energy_drift);
    o.warnings = r.warnings;
  } catch (const paramech::Error& e) {
    o.code = int(e.exit_code());
    o.message = name + ": error (exit " + std::to_string(o.code) + "): " + e.what();
  } catch (const std::exception& e) {
    o.code = int(ExitCode::invalid_input);
    o.message = name + ": error (exit " + std::to_string(o.code) + "): " + e.what();
  }
  return o;
}

int cmd_run(const std::vector<std::string>& files, const std::string& out) {
  std::vector<Outcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = thread_cap(files.size());
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < files.size(); k = next++) outcomes[k] = run_one(files[k], out);
    });
  for (auto& t : pool) t.join();

  int code = 0;
  for (const auto& o : outcomes) {
    (o.code == 0 ? std::cout : std::cerr) << o.message << "\n";
    for (const auto& w : o.warnings) std::cout << "  warning: " << w << "\n";
    if (code == 0) code = o.code;
  }
  return code;
}

int cmd_verify(std::size_t n, const std::string& report_path) {
  const paramech::AuditReport report = paramech::verify_all(n);
  const std::string text = paramech::render(report);
  std::cout << text;
  if (!report_path.empty()) {
    const fs::path p(report_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    paramech::write_file_atomic(p, text);
  }
  return report.ok() ? 0 : 1;
}

int cmd_audit_el(const std::string& file) {
  std::cout << paramech::render(paramech::audit_el(paramech::load_scenario(file)));
  return 0;
}

int cmd_plotdata(const std::string& file, const std::vector<std::string>& cols, const std::string& out) {
  const std::string csv = paramech::to_csv(paramech::select_columns(paramech::read_table(file), cols));
  if (out.empty())
    std::cout << csv;
  else
    paramech::write_file_atomic(out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paramech: para-quaternionic mechanics toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> run_files;
  std::string run_out = ".";
  auto* run = app.add_subcommand("run", "Simulate scenario files");
  run->add_option("scenario", run_files, "Scenario file(s)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output directory");

  std::size_t verify_n = 2;
  std::string verify_report;
  auto* verify = app.add_subcommand("verify", "Run the exact identity audit");
  verify->add_option("--n", verify_n, "Largest n (number of quadruples)")->check(CLI::PositiveNumber);
  verify->add_option("--report", verify_report, "Also write the report to this file");

  std::string audit_file;
  auto* audit = app.add_subcommand("audit-el", "Printed vs derived Euler-Lagrange residuals");
  audit->add_option("scenario", audit_file, "Lagrangian scenario file")->required()->check(CLI::ExistingFile);

  std::string plot_file;
  std::string plot_out;
  std::vector<std::string> plot_cols;
  auto* plot = app.add_subcommand("plotdata", "Extract columns from a trajectory table");
  plot->add_option("trajectory", plot_file, "Trajectory CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--cols", plot_cols, "Comma-separated column names")->required()->delimiter(',');
  plot->add_option("--out", plot_out, "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : int(ExitCode::invalid_input);
  }

  try {
    if (*run) return cmd_run(run_files, run_out);
    if (*verify) return cmd_verify(verify_n, verify_report);
    if (*audit) return cmd_audit_el(audit_file);
    if (*plot) return cmd_plotdata(plot_file, plot_cols, plot_out);
  } catch (const paramech::Error& e) {
    std::cerr << "paramech: " << e.what() << "\n";
    return int(e.exit_code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "paramech: " << e.what() << "\n";
    return int(ExitCode::io_failure);
  } catch (const std::exception& e) {
    std::cerr << "paramech: " << e.what() << "\n";
    return int(ExitCode::invalid_input);
  }
  return 0;
}
