// hhed: command-line front end for the Holstein-Hubbard exact-diagonalization harness.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"

#include "hhed/config.hpp"
#include "hhed/error.hpp"
#include "hhed/kernels.hpp"
#include "hhed/report.hpp"
#include "hhed/runner.hpp"

namespace {

constexpr int kUsageExit = 64;

const char* kUsage =
    "usage: hhed <subcommand> --config PATH [options]\n"
    "\n"
    "subcommands:\n"
    "  check-conditions  validate lattice, phonon sum rule and U_eff definiteness\n"
    "  solve             print low-lying spectra of the configured sectors\n"
    "  verify            run the configured checks (or --check NAME ...)\n"
    "  susceptibility    run the charge susceptibility bound\n"
    "  sweep             tabulate a sweep: --param cutoff|theta|U0\n"
    "\n"
    "options:\n"
    "  --config PATH     YAML run configuration (required)\n"
    "  --check NAME      check to run, repeatable (verify only)\n"
    "  --out DIR         output directory (overrides output.directory)\n"
    "  --threads N       OpenMP threads for the kernels\n"
    "  --max-dim N       largest dimension solved densely\n"
    "\n"
    "exit status: 0 all checks pass, 1 a check fails or errors, 2 inconclusive, 64 usage error\n";

int report_run(const hhed::RunConfig& cfg, const std::vector<std::string>& checks, const std::string& out) {
  const auto result = hhed::run(cfg, checks, out.empty() ? std::nullopt : std::optional<std::filesystem::path>(out));
  std::cout << hhed::render_summary(result.record);
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  const std::set<std::string> subcommands{"check-conditions", "solve", "verify", "susceptibility", "sweep"};
  if (argc < 2 || (!subcommands.count(argv[1]) && std::string(argv[1]) != "-h" && std::string(argv[1]) != "--help")) {
    std::cerr << kUsage;
    return kUsageExit;
  }

  CLI::App app{"Holstein-Hubbard exact diagonalization harness", "hhed"};
  app.require_subcommand(1);
  std::string config_path, out, param;
  std::vector<std::string> checks;
  int threads = 0;
  long long max_dim = -1;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "YAML run configuration")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-dim", max_dim, "largest dimension solved densely")->check(CLI::NonNegativeNumber);
  };
  auto* check_conditions = app.add_subcommand("check-conditions", "validate model conditions");
  auto* solve = app.add_subcommand("solve", "print spectra");
  auto* verify = app.add_subcommand("verify", "run checks");
  auto* susceptibility = app.add_subcommand("susceptibility", "charge susceptibility bound");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep table");
  for (auto* s : {check_conditions, solve, verify, susceptibility, sweep}) common(s);
  verify->add_option("--check", checks, "check name (repeatable)")->check(CLI::IsMember(hhed::kCheckNames));
  sweep->add_option("--param", param, "cutoff, theta or U0")->required()->check(CLI::IsMember({"cutoff", "theta", "U0"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (threads > 0) hhed::kernels::set_thread_count(threads);
    auto cfg = hhed::load_config(config_path);
    if (max_dim >= 0) cfg.solver.dense_max_dim = static_cast<std::size_t>(max_dim);

    if (check_conditions->parsed()) return report_run(cfg, {"conditions"}, out);
    if (verify->parsed()) return report_run(cfg, checks, out);
    if (susceptibility->parsed()) return report_run(cfg, {"susceptibility"}, out);

    if (solve->parsed()) {
      for (const auto& s : hhed::solve_sectors(cfg)) {
        std::printf("sector M=%g n_ph_max=%d dim=%zu solver=%s\n", 0.5 * s.two_m, s.cutoff, s.dimension,
                    hhed::to_string(s.spectrum.solver).c_str());
        for (std::size_t i = 0; i < s.spectrum.eigenvalues.size(); ++i) {
          std::printf("  E%zu = %.15g\n", i, s.spectrum.eigenvalues[i]);
        }
        std::printf("  gap = %.15g\n  degeneracy = %d\n  <S^2> = %.15g\n", s.spectrum.gap, s.spectrum.degeneracy,
                    s.spin_sq);
      }
      return 0;
    }

    const auto p = param == "cutoff" ? hhed::SweepParameter::Cutoff
                   : param == "theta" ? hhed::SweepParameter::Theta
                                      : hhed::SweepParameter::U0;
    const auto table = hhed::sweep_csv(hhed::run_sweep(cfg, p));
    std::cout << table;
    if (!out.empty()) {
      std::filesystem::create_directories(out);
      std::ofstream(std::filesystem::path(out) / ("sweep_" + param + ".csv")) << table;
    }
    return 0;
  } catch (const hhed::Error& e) {
    std::cerr << "hhed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hhed: " << e.what() << "\n";
    return 1;
  }
}
