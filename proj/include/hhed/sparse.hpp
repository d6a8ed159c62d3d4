#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hhed/kernels.hpp"

namespace hhed {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Relative tolerance of the Hermitian flag: max |A_ij - conj(A_ji)| <= tol * max |A_ij|.
inline constexpr double kHermitianTol = 1e-13;

/// Sparse linear map between two (possibly different) sector bases.
///
/// Built from coordinate triplets; duplicates are summed and exact zeros
/// dropped, so the stored pattern has one entry per (row, col). Immutable
/// after construction apart from the Hermitian flag.
class SparseOperator {
 public:
  SparseOperator() = default;

  static SparseOperator from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static SparseOperator identity(std::size_t n);
  static SparseOperator zero(std::size_t rows, std::size_t cols);
  static SparseOperator diagonal(std::span<const Complex> diag);

  std::size_t rows() const { return csr_.rows; }
  std::size_t cols() const { return csr_.cols; }
  std::size_t nnz() const { return csr_.nnz(); }
  bool is_square() const { return csr_.rows == csr_.cols; }
  const CsrMatrix<Complex>& csr() const { return csr_; }

  bool hermitian() const { return hermitian_; }
  /// Verifies the Hermitian property and sets the flag. Throws NotHermitian.
  void mark_hermitian();
  double hermiticity_defect() const;

  double max_abs() const;
  bool is_real() const;
  /// Real part of the stored values. Throws InvalidArgument unless is_real().
  CsrMatrix<double> real_csr() const;

  Complex at(std::size_t row, std::size_t col) const;
  std::vector<Triplet> entries() const;
  SparseOperator adjoint() const;
  Eigen::MatrixXcd to_dense() const;

  void apply(std::span<const Complex> x, std::span<Complex> y) const;
  Eigen::VectorXcd operator*(const Eigen::VectorXcd& x) const;

 private:
  CsrMatrix<Complex> csr_;
  bool hermitian_ = false;
};

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);
/// alpha * a + beta * b
SparseOperator add(const SparseOperator& a, const SparseOperator& b, Complex alpha = 1.0, Complex beta = 1.0);
SparseOperator scaled(const SparseOperator& a, Complex alpha);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

}  // namespace hhed
