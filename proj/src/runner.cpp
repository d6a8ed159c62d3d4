#include "hhed/runner.hpp"

#include "hhed/error.hpp"
#include "hhed/ops.hpp"
#include "hhed/report.hpp"

namespace hhed {

namespace {

HarnessOptions harness(const RunConfig& c) { return {c.cutoffs, c.solver}; }

VerificationReport dispatch(const RunConfig& c, const std::string& name) {
  if (name == "conditions") return check_conditions(c.model, c.fourier ? &*c.fourier : nullptr);
  if (name == "uniqueness") return verify_sector_uniqueness(c.model, c.sectors_two_m, harness(c));
  if (name == "total-spin") return verify_total_spin(c.model, harness(c));
  if (name == "sign-pattern") return verify_sign_pattern(c.model, harness(c));
  if (name == "lro") return verify_lro_inequality(c.model, harness(c));
  if (name == "susceptibility") {
    if (!c.fourier) {
      throw Error(ErrorCode::PreconditionFailed, "translation-invariant couplings required (fourier block or ring preset)");
    }
    return charge_susceptibility(c.model, *c.fourier, c.k_mesh, harness(c));
  }
  if (name == "adiabatic") return verify_adiabatic_limit(c.model, c.thetas, harness(c));
  if (name == "heisenberg") {
    if (c.model.g.isZero(0.0)) return verify_heisenberg_limit(c.model, c.u0_grid, c.solver);
    ModelSpec electronic = c.model;
    electronic.g.setZero();
    auto r = verify_heisenberg_limit(electronic, c.u0_grid, c.solver);
    r.notes.push_back("evaluated on the electronic part of the model (g set to 0)");
    return r;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + name + "'");
}

}  // namespace

VerificationReport run_check(const RunConfig& config, const std::string& name) {
  try {
    return dispatch(config, name);
  } catch (const Error& e) {
    VerificationReport r;
    r.check = name;
    r.statement = "not evaluated";
    r.converged = false;
    r.verdict = Verdict::Error;
    r.notes.push_back(e.what());
    return r;
  }
}

int exit_code_for(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail || r.verdict == Verdict::Error) return 1;
    inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
  }
  return inconclusive ? 2 : 0;
}

RunResult run(const RunConfig& config, const std::vector<std::string>& checks,
              const std::optional<std::filesystem::path>& out) {
  RunResult result;
  for (const auto& name : checks.empty() ? config.checks : checks) result.reports.push_back(run_check(config, name));
  result.exit_code = exit_code_for(result.reports);
  result.record = run_record(config, result.reports, result.exit_code);
  result.artifacts = write_artifacts(config, result.record, result.reports, out.value_or(config.output_dir));
  return result;
}

std::vector<SectorSpectrum> solve_sectors(const RunConfig& config, std::size_t n_eigenvalues) {
  std::vector<SectorSpectrum> out;
  const int n = static_cast<int>(config.model.size());
  const int cutoff = config.cutoffs.back();
  for (const int two_m : config.sectors_two_m) {
    const auto basis = SectorBasis::sector(n, {n, two_m, cutoff});
    const auto h = assemble_hh_hamiltonian(config.model, basis);
    SectorSpectrum s{two_m, cutoff, basis.dimension(), ground_spectrum(h, n_eigenvalues, config.solver), 0.0};
    s.spin_sq = spin_squared_expectation(basis, s.spectrum.eigenvectors.front());
    out.push_back(std::move(s));
  }
  return out;
}

SweepResult run_sweep(const RunConfig& config, SweepParameter parameter) {
  const int n = static_cast<int>(config.model.size());
  const int two_m = config.sectors_two_m.front();
  switch (parameter) {
    case SweepParameter::Cutoff:
      return cutoff_sweep(config.model, n, two_m, config.cutoffs, {}, config.solver);
    case SweepParameter::Theta:
      return theta_sweep(config.model, n, two_m, config.cutoffs.back(), config.thetas, config.solver);
    case SweepParameter::U0:
      break;
  }
  SweepResult r;
  r.parameter = "U0";
  const auto basis = SectorBasis::sector(n, {n, two_m, 0});
  for (const double u0 : config.u0_grid) {
    ModelSpec scaled = config.model;
    scaled.U += u0 * RealMatrix::Identity(n, n);
    const auto spec = ground_spectrum(assemble_hubbard(scaled, basis), 2, config.solver);
    SweepPoint p;
    p.parameter = u0;
    p.dimension = basis.dimension();
    p.e0 = spec.eigenvalues.front();
    p.e1 = spec.eigenvalues.size() > 1 ? spec.eigenvalues[1] : p.e0;
    p.gap = spec.gap;
    p.degeneracy = spec.degeneracy;
    p.spin_sq = spin_squared_expectation(basis, spec.eigenvectors.front());
    p.observables = {{"U0*gap", u0 * spec.gap}};
    r.points.push_back(std::move(p));
  }
  return r;
}

}  // namespace hhed
