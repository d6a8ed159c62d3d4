#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hhed/hilbert.hpp"
#include "hhed/model.hpp"
#include "hhed/sparse.hpp"

namespace hhed {

enum class SolverKind { Dense, Lanczos };

std::string to_string(SolverKind kind);

inline constexpr std::size_t kDenseMaxDim = 2000;
inline constexpr double kResidualTol = 1e-10;
inline constexpr double kDegeneracyTol = 1e-8;
inline constexpr double kResolventTol = 1e-9;

struct SolverOptions {
  std::size_t dense_max_dim = kDenseMaxDim;
  /// Eigen-residual bound relative to max |H_ij|.
  double residual_tol = kResidualTol;
  double degeneracy_tol = kDegeneracyTol;
  /// Krylov vectors kept before an explicit restart.
  std::size_t max_krylov = 250;
  std::uint64_t seed = 0x5eed;
  /// Forces one path regardless of dimension (testing, cross-checks).
  std::optional<SolverKind> force;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Eigen::VectorXcd> eigenvectors;
  double gap = 0.0;  // E1 - E0, +inf for a one-dimensional space
  int degeneracy = 1;
  SolverKind solver = SolverKind::Dense;
  std::vector<double> residual_norms;
  std::size_t matvecs = 0;

  double ground_energy() const { return eigenvalues.front(); }
  std::span<const Eigen::VectorXcd> ground_vectors() const {
    return {eigenvectors.data(), static_cast<std::size_t>(degeneracy)};
  }
};

/// Lowest eigenpairs of a Hermitian operator: dense below dense_max_dim,
/// otherwise Lanczos with full reorthogonalization and locking. At least
/// n_eigenvalues pairs are returned, plus every pair degenerate with E0.
SpectrumResult ground_spectrum(const SparseOperator& h, std::size_t n_eigenvalues = 2, const SolverOptions& options = {});

/// Solves (H - E0) x = (1 - P0) v with P0 x = 0 by conjugate gradients on the
/// deflated operator (1-P0)(H-E0)(1-P0). Residual <= tol * ||v||.
Eigen::VectorXcd deflated_resolvent_apply(const SparseOperator& h, double e0, std::span<const Eigen::VectorXcd> ground,
                                          const Eigen::VectorXcd& v, double tol = kResolventTol);

// ---------------------------------------------------------------------------
// Parameter sweeps

inline constexpr double kSweepEnergyTol = 1e-6;
inline constexpr double kSweepObservableTol = 1e-4;

using NamedValues = std::vector<std::pair<std::string, double>>;

struct SweepPoint {
  double parameter = 0.0;
  std::size_t dimension = 0;
  double e0 = 0.0;
  double e1 = 0.0;
  double gap = 0.0;
  int degeneracy = 1;
  double spin_sq = 0.0;
  std::optional<double> overlap;
  NamedValues observables;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;
  bool converged = false;
  double energy_change = 0.0;      // max(|dE0|, |dE1|) over the last step
  double observable_change = 0.0;  // max |d observable| over the last step
  double energy_tol = kSweepEnergyTol;
  double observable_tol = kSweepObservableTol;
  /// Electronic reference (Hubbard ground energy) for theta sweeps.
  std::optional<double> reference_energy;

  const SweepPoint& last() const { return points.back(); }
};

struct SweepContext {
  const ModelSpec& model;
  const SectorBasis& basis;
  const SparseOperator& hamiltonian;
  const SpectrumResult& spectrum;
};

/// Extra observables recorded at every grid point; convergence uses kSweepObservableTol.
using ObservableFn = std::function<NamedValues(const SweepContext&)>;

SweepResult cutoff_sweep(const ModelSpec& model, int n_el, int two_m, std::span<const int> cutoffs,
                         const ObservableFn& observables = {}, const SolverOptions& options = {});

/// Solves H with omega -> theta * omega. Records E0, E1, gap, <S_tot^2> and
/// |<exp(L) psi_theta | psi_Hubbard (x) vacuum>|.
SweepResult theta_sweep(const ModelSpec& model, int n_el, int two_m, int cutoff, std::span<const double> thetas,
                        const SolverOptions& options = {});

/// M^2 + ½(||S- psi||^2 + ||S+ psi||^2) for a state in a fixed-S3 sector.
double spin_squared_expectation(const SectorBasis& basis, const Eigen::VectorXcd& psi);

}  // namespace hhed
