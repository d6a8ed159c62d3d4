#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hhed/hilbert.hpp"
#include "hhed/model.hpp"
#include "hhed/sparse.hpp"

namespace hhed {

// ---------------------------------------------------------------------------
// Single-configuration fermion algebra in the global mode order.

struct SignedConfig {
  FermionConfig config;
  int sign = 1;
};

/// Number of occupied modes preceding (site, spin) in the global order.
int preceding_modes(const FermionConfig& c, int site, Spin spin);
std::optional<SignedConfig> annihilate(const FermionConfig& c, int site, Spin spin);
std::optional<SignedConfig> create(const FermionConfig& c, int site, Spin spin);
/// c^dag_{to,spin} c_{from,spin}
std::optional<SignedConfig> hop(const FermionConfig& c, int to, int from, Spin spin);
int occupation(const FermionConfig& c, int site);

// ---------------------------------------------------------------------------
// Ladder operators

/// c_{site,spin} : from -> to. Throws SectorMismatch when a target state is missing.
SparseOperator annihilator(int site, Spin spin, const SectorBasis& from, const SectorBasis& to);
SparseOperator creator(int site, Spin spin, const SectorBasis& from, const SectorBasis& to);

/// b_site on a basis: n -> n-1 with amplitude sqrt(n).
SparseOperator phonon_annihilator(int site, const SectorBasis& basis);
/// b^dag_site, projected onto the truncated space (amplitudes above the cutoff are dropped).
SparseOperator phonon_creator(int site, const SectorBasis& basis);

SparseOperator electron_number(const SectorBasis& basis);
SparseOperator phonon_number(const SectorBasis& basis);

// ---------------------------------------------------------------------------
// Hamiltonians

/// Holstein-Hubbard Hamiltonian
///   sum t_xy c^dag_xs c_ys + sum (U_xy/2)(n_x-1)(n_y-1)
///   + sum g_xy n_x (b^dag_y + b_y) + omega sum b^dag_x b_x
/// restricted to the basis. The Hermitian flag is verified.
SparseOperator assemble_hh_hamiltonian(const ModelSpec& model, const SectorBasis& basis);

/// Extended Hubbard part only (g and omega ignored), acting as identity on phonons.
SparseOperator assemble_hubbard(const ModelSpec& model, const SectorBasis& basis);

/// Coulomb term in the form U0 sum n_up n_dn + ½ sum_{x!=y} U_xy n_x n_y (diagonal).
SparseOperator assemble_standard_coulomb(const ModelSpec& model, const SectorBasis& basis);

/// sum over ordered pairs J_xy (S_x.S_y - 1/4) on the 2^n spin space; bit x set
/// means spin up at x. J must be symmetric and nonnegative.
SparseOperator assemble_heisenberg(const RealMatrix& J, int n_sites);
/// S_tot^2 and S3 on the 2^n spin space.
SparseOperator heisenberg_spin_squared(int n_sites);
SparseOperator heisenberg_magnetization(int n_sites);
/// J_xy = 2 t_xy^2
RealMatrix heisenberg_couplings(const ModelSpec& model);

// ---------------------------------------------------------------------------
// Spin and charge observables

/// sum_x w_x S+_x : from -> to, where S+_x = c^dag_{x up} c_{x dn}.
SparseOperator spin_raiser(const SectorBasis& from, const SectorBasis& to, std::span<const double> weights);
/// sum_x w_x S-_x : from -> to.
SparseOperator spin_lowerer(const SectorBasis& from, const SectorBasis& to, std::span<const double> weights);

struct SpinOperators {
  SparseOperator s3;
  std::optional<SectorBasis> raised;   // S3 = M+1 sector, absent at the top
  std::optional<SparseOperator> s_plus;
  std::optional<SectorBasis> lowered;  // S3 = M-1 sector, absent at the bottom
  std::optional<SparseOperator> s_minus;
  SparseOperator s_total_sq;
};

/// S3, S+/S- to the adjacent sectors and S_tot^2 = (S3)^2 + ½(S+S- + S-S+).
/// On a full Fock basis the adjacent "sectors" are the basis itself.
SpinOperators spin_operators(const SectorBasis& basis);

/// Adjacent sector basis with S3 shifted by delta (in units of 1), or nullopt if empty.
std::optional<SectorBasis> adjacent_sector(const SectorBasis& basis, int delta);

enum class RaiserKind { Uniform, Staggered };

/// |L|^{-1/2} sum_x w_x S+_x with w = 1 (uniform) or gamma(x) = ±1 (staggered).
SparseOperator staggered_spin_raiser(const SectorBasis& from, const SectorBasis& to,
                                     std::span<const Sublattice> sublattice, RaiserKind kind);

/// <S+_x S-_y> in the state psi, as a real |L| x |L| matrix (imaginary parts must vanish).
RealMatrix spin_flip_correlations(const SectorBasis& basis, const Eigen::VectorXcd& psi);

/// q_x = n_x - 1
SparseOperator charge_operator(int site, const SectorBasis& basis);
/// |L|^{-1/2} sum_x phase_x q_x, with phase_x = exp(-i k.x) supplied by the caller.
SparseOperator charge_mode(const SectorBasis& basis, std::span<const Complex> phases);

// ---------------------------------------------------------------------------
// Lang-Firsov transformation

inline constexpr std::size_t kDenseExpMaxDim = 4000;

/// L = (theta omega)^{-1} sum g_xy n_x (b^dag_y - b_y); real antisymmetric.
SparseOperator lang_firsov_generator(const ModelSpec& model, const SectorBasis& basis, double theta);
/// exp(L) as a dense matrix. Throws DimensionTooLarge above kDenseExpMaxDim.
Eigen::MatrixXd lang_firsov_unitary(const SparseOperator& generator);
/// exp(L) psi without forming exp(L): Taylor series on steps of unit 1-norm.
Eigen::VectorXcd lang_firsov_apply(const SparseOperator& generator, const Eigen::VectorXcd& psi);
/// exp(L) H exp(-L).
Eigen::MatrixXcd lang_firsov_transform(const SparseOperator& hamiltonian, const SparseOperator& generator);

}  // namespace hhed
