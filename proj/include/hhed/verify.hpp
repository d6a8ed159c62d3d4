#pragma once
// Verification harness. Each check solves the relevant sector Hamiltonians over a
// phonon-cutoff grid and turns an exact statement into inequalities with
// explicit tolerances. Measurements are taken at the last cutoff; a check can
// only pass when the last two cutoffs agree.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hhed/model.hpp"
#include "hhed/ops.hpp"
#include "hhed/solve.hpp"

namespace hhed {

enum class Verdict { Pass, Fail, Inconclusive, Error };

std::string to_string(Verdict v);

inline constexpr double kSpinTol = 1e-6;
inline constexpr double kSignTol = 1e-10;
inline constexpr double kLroTol = 1e-10;
inline constexpr double kChiTol = 1e-8;
inline constexpr double kOverlapTarget = 0.99;
inline constexpr double kAdiabaticEnergyTol = 1e-3;
inline constexpr double kSpinConstancyTol = 1e-8;
inline constexpr double kHeisenbergGapTol = 0.05;

using Flags = std::vector<std::pair<std::string, bool>>;

struct LabeledSweep {
  std::string label;
  SweepResult sweep;
};

struct VerificationReport {
  std::string check;
  std::string statement;
  Flags preconditions;
  NamedValues measured;
  NamedValues tolerances;
  Flags assertions;
  std::vector<LabeledSweep> traces;
  bool converged = true;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;

  std::optional<double> value(const std::string& name) const;
  bool assertion(const std::string& name) const;
};

struct HarnessOptions {
  /// Phonon cutoffs, strictly increasing; convergence compares the last two.
  std::vector<int> cutoffs{11, 12};
  SolverOptions solver;
};

/// Connectivity, bipartite hopping, the phonon sum rule, |L| even and the
/// definiteness of U_eff; with a Fourier model the U_eff(k) table is recorded too. Never throws for a violated condition.
VerificationReport check_conditions(const ModelSpec& model, const FourierModel* fourier = nullptr);

/// Degeneracy 1 and gap > tau_deg in each listed S3 sector (2M values) at half filling.
VerificationReport verify_sector_uniqueness(const ModelSpec& model, std::span<const int> two_m,
                                            const HarnessOptions& options = {});

/// <S_tot^2> of the M=0 ground state, E0(M) for every M, and the overall degeneracy.
VerificationReport verify_total_spin(const ModelSpec& model, const HarnessOptions& options = {});

/// <S+_x S-_y> > 0 on equal sublattices and < 0 otherwise in the M=0 ground state.
VerificationReport verify_sign_pattern(const ModelSpec& model, const HarnessOptions& options = {});

/// m(Q) >= m(0) > 0 for the uniform and staggered transverse structure factors.
VerificationReport verify_lro_inequality(const ModelSpec& model, const HarnessOptions& options = {});

/// chi(k) <= 1/U_eff(k) on the mesh points `k_mesh` (all when empty). `model`
/// must carry the couplings of `fourier`.
VerificationReport charge_susceptibility(const ModelSpec& model, const FourierModel& fourier,
                                         std::span<const std::size_t> k_mesh = {}, const HarnessOptions& options = {});

/// Theta sweep in the M=0 sector at the last two cutoffs.
VerificationReport verify_adiabatic_limit(const ModelSpec& model, std::span<const double> thetas,
                                          const HarnessOptions& options = {});

/// Hubbard model with the onsite interaction raised by U0 on each grid point:
/// ground spin equals the Heisenberg ground spin, and on two sites U0 times
/// the singlet-triplet gap approaches the Heisenberg gap. Requires g = 0.
VerificationReport verify_heisenberg_limit(const ModelSpec& model, std::span<const double> u0_grid,
                                           const SolverOptions& solver = {});

/// Total spin S from <S^2> = S(S+1).
double spin_from_square(double s_sq);

/// m(k) = <S+_k S-_k> for the uniform (k=0) or staggered (k=Q) raiser.
double structure_factor(const SectorBasis& basis, std::span<const Sublattice> sublattice, const Eigen::VectorXcd& psi,
                        RaiserKind kind);

}  // namespace hhed
