#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hhed {

using RealMatrix = Eigen::MatrixXd;

enum class Sublattice : unsigned char { A, B };

/// Couplings of a Holstein-Hubbard model on a finite lattice.
///
/// Plain aggregate: use build_model() to obtain a validated instance. Tests
/// and internal helpers may construct one directly when they need a lattice
/// that deliberately violates the bipartite/connectivity conditions.
struct ModelSpec {
  std::vector<std::string> sites;
  std::vector<Sublattice> sublattice;
  RealMatrix t;  // hopping
  RealMatrix U;  // Coulomb
  RealMatrix g;  // electron-phonon
  double omega = 1.0;

  std::size_t size() const { return sites.size(); }
  std::size_t count(Sublattice s) const;
  /// +1 on sublattice A, -1 on B.
  int parity(std::size_t site) const { return sublattice[site] == Sublattice::A ? 1 : -1; }
  /// ½ | |B| - |A| |
  double expected_total_spin() const;
};

/// Validates and assembles a ModelSpec. When `sublattice` is empty the
/// two-coloring is computed from the bond graph of `t`.
ModelSpec build_model(std::vector<std::string> sites, std::optional<std::vector<Sublattice>> sublattice,
                      RealMatrix t, RealMatrix U, RealMatrix g, double omega);

/// Two-coloring of the bond graph {(x,y): t_xy != 0}. A proposed coloring is
/// validated instead of computed. Components are colored starting from their
/// smallest site, which gets A.
std::vector<Sublattice> check_bipartition(const RealMatrix& t,
                                          std::optional<std::span<const Sublattice>> proposed = std::nullopt,
                                          bool require_connected = true);

bool is_connected(const RealMatrix& t);

inline constexpr double kSumRuleTol = 1e-12;
inline constexpr double kDefinitenessTol = 1e-10;
inline constexpr double kFourierTol = 1e-10;

struct SumRuleReport {
  bool holds = false;
  Eigen::VectorXd column_sums;
};

SumRuleReport check_phonon_sum_rule(const RealMatrix& g, double tol = kSumRuleTol);

/// U_xy - (2/omega) sum_z g_xz g_yz
RealMatrix effective_interaction(const ModelSpec& model);
RealMatrix effective_interaction(const RealMatrix& U, const RealMatrix& g, double omega);

enum class DefinitenessClass { PositiveDefinite, PositiveSemidefinite, Indefinite };

struct Definiteness {
  DefinitenessClass classification = DefinitenessClass::Indefinite;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
};

std::string to_string(DefinitenessClass c);

/// Classifies by the smallest eigenvalue with band kDefinitenessTol * max(1, ||M||_2).
Definiteness definiteness(const RealMatrix& m);

// ---------------------------------------------------------------------------
// Translation-invariant couplings defined through their lattice Fourier
// transforms on a d-dimensional torus with 2L sites per direction.

/// Site and reciprocal-mesh bookkeeping of the torus. Both sites n and mesh
/// points l carry integer coordinates in {-L+1, ..., L}; flat indices run with
/// the first coordinate fastest. Phases are k.x = 2 pi sum_j n_j l_j / (2L).
class TorusLattice {
 public:
  TorusLattice(int dimension, int linear_size);

  int dimension() const { return dimension_; }
  int linear_size() const { return linear_size_; }
  std::size_t size() const { return coords_.size(); }

  const std::array<int, 3>& coords(std::size_t i) const { return coords_[i]; }
  std::size_t index_of(std::array<int, 3> coords) const;
  /// Index of -k for mesh point k.
  std::size_t negate(std::size_t k) const;
  /// k . x for mesh point k and site x.
  double phase(std::size_t k, std::size_t x) const;
  /// Nearest-neighbor pairs (x, x + a_j) with periodic wrap; each pair once.
  std::vector<std::pair<std::size_t, std::size_t>> bonds() const;
  /// Parity of sum_j n_j: even sites on A.
  std::vector<Sublattice> sublattices() const;
  std::string site_name(std::size_t x) const;

 private:
  int dimension_;
  int linear_size_;
  std::vector<std::array<int, 3>> coords_;
  int wrap(int n) const;
};

struct FourierCouplingSpec {
  int dimension = 1;
  int linear_size = 1;
  /// Primitive vectors a_1..a_d (rows). Only used for reporting k in Cartesian form.
  std::vector<std::vector<double>> primitive_vectors;
  /// G(k), U(k) sampled on the mesh, in TorusLattice flat order.
  std::vector<double> G;
  std::vector<double> U;
};

struct FourierModel {
  TorusLattice lattice;
  RealMatrix g;
  RealMatrix U;
  std::vector<double> u_eff_k;
  double omega = 1.0;
  /// Largest imaginary residue discarded when forming g and U.
  double imaginary_residue = 0.0;

  /// Cartesian wave vector of mesh point k (reciprocal of primitive vectors).
  std::vector<double> wave_vector(const FourierCouplingSpec& spec, std::size_t k) const;
};

FourierModel fourier_model(const FourierCouplingSpec& spec, double omega);

/// Forward transform sum_x M_{x,0} e^{-i k.x} for every mesh k (circulant symbol).
std::vector<std::complex<double>> fourier_symbol(const TorusLattice& lattice, const RealMatrix& m);

}  // namespace hhed
