#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hhed/config.hpp"
#include "hhed/verify.hpp"

namespace hhed {

/// Runs one named check. Library errors become a report with verdict Error.
VerificationReport run_check(const RunConfig& config, const std::string& name);

/// 0 if every verdict passes, 1 if any fails or errors, otherwise 2.
int exit_code_for(const std::vector<VerificationReport>& reports);

struct RunResult {
  std::vector<VerificationReport> reports;
  nlohmann::json record;
  int exit_code = 0;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs `checks` (config.checks when empty) and writes artifacts to `out`
/// (config.output_dir when unset).
RunResult run(const RunConfig& config, const std::vector<std::string>& checks = {},
              const std::optional<std::filesystem::path>& out = std::nullopt);

struct SectorSpectrum {
  int two_m = 0;
  int cutoff = 0;
  std::size_t dimension = 0;
  SpectrumResult spectrum;
  double spin_sq = 0.0;
};

/// Low-lying spectrum of every configured sector at the largest cutoff.
std::vector<SectorSpectrum> solve_sectors(const RunConfig& config, std::size_t n_eigenvalues = 4);

enum class SweepParameter { Cutoff, Theta, U0 };

/// Sweep in the first configured sector. Theta sweeps use the largest cutoff;
/// U0 sweeps solve the electronic model with U -> U + U0 I.
SweepResult run_sweep(const RunConfig& config, SweepParameter parameter);

}  // namespace hhed
